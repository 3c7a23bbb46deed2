#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <rfm/construct.hpp>
#include <rfm/decompose.hpp>
#include <rfm/descriptor.hpp>
#include <rfm/error.hpp>
#include <rfm/families.hpp>
#include <rfm/graph.hpp>
#include <rfm/matrix2.hpp>
#include <rfm/smith.hpp>

namespace rfm {

/// Z^free_rank + Z/t_1 + ... + Z/t_k with t_1 | t_2 | ... and every t_i >= 2.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

inline std::string to_string(const AbelianGroup& g) {
  std::string out;
  auto add = [&](const std::string& part) { out += (out.empty() ? "" : " + ") + part; };
  if (g.free_rank == 1) add("Z");
  if (g.free_rank > 1) add("Z^" + std::to_string(g.free_rank));
  for (const auto& t : g.torsion) add("Z/" + t.str());
  return out.empty() ? "0" : out;
}

/// Cokernel of the map Z^rows -> Z^cols given by the rows of `relations`.
inline AbelianGroup cokernel(const IntMatrix& relations) {
  AbelianGroup out;
  const auto factors = invariant_factors(relations);
  out.free_rank = relations.cols() - factors.size();
  for (const auto& f : factors) {
    if (f > 1) out.torsion.push_back(f);
  }
  return out;
}

/// |E| - |V| + 1.
inline std::size_t graph_betti(const DecompositionGraph& g) {
  if (!is_connected(g)) throw PreconditionError("graph_betti needs a connected graph");
  return g.edge_count() + 1 - g.vertex_count();
}

/// Relation matrix of H1 for the glued manifold: columns are the piece
/// generators mu_0..mu_{b-1}, lambda of every piece followed by one free
/// generator per independent cycle of the graph.
inline IntMatrix homology_presentation(const DecompositionGraph& g) {
  if (auto vs = validate_graph(g); !vs.empty()) throw ValidationError(std::move(vs));
  std::map<PieceId, std::size_t> offset;
  std::size_t cols = 0;
  for (const auto& [id, kind] : g.pieces) {
    offset[id] = cols;
    cols += static_cast<std::size_t>(kind.port_count()) + 1;
  }
  const std::size_t piece_cols = cols;
  cols += graph_betti(g);

  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& [id, kind] : g.pieces) {
    const int b = kind.port_count();
    if (b == 0) continue;
    std::vector<std::int64_t> r(piece_cols, 0);
    for (int i = 0; i < b; ++i) r[offset[id] + i] = 1;
    rows.push_back(std::move(r));
  }
  auto mu = [&](const PortRef& p) { return offset.at(p.piece) + static_cast<std::size_t>(p.port); };
  auto lambda = [&](const PortRef& p) { return offset.at(p.piece) + static_cast<std::size_t>(g.kind(p.piece).port_count()); };
  for (const auto& e : g.gluings) {
    const auto& m = e.matrix;
    // mu_from = a mu_to + c lambda_to, lambda_from = b mu_to + d lambda_to
    std::vector<std::int64_t> r1(piece_cols, 0), r2(piece_cols, 0);
    r1[mu(e.from)] += 1;
    r1[mu(e.to)] -= m.a;
    r1[lambda(e.to)] -= m.c;
    r2[lambda(e.from)] += 1;
    r2[mu(e.to)] -= m.b;
    r2[lambda(e.to)] -= m.d;
    rows.push_back(std::move(r1));
    rows.push_back(std::move(r2));
  }

  IntMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < piece_cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

/// H1(M; Z) of the graph manifold described by `g`.
inline AbelianGroup first_homology(const DecompositionGraph& g) { return cokernel(homology_presentation(g)); }

// ---------------------------------------------------------------------------
// Open book data of a round fold map

struct CriticalCircle {
  int level;
  bool definite;
  Direction direction;
};

struct OpenBookSummary {
  int binding_components = 0;
  int page_euler_characteristic = 0;
  int page_boundary = 0;
  bool page_connected = false;
  std::optional<int> page_genus;  // when the page is connected
  std::vector<CriticalCircle> critical_sequence;
};

/// Whether the page f^-1(ray) is connected: circles of the regular fibers
/// joined through the blocks (pants join all their circles, annuli join
/// each copy straight across).
inline bool descriptor_page_connected(const RoundFoldDescriptor& d) {
  // circle ids: one per copy carried by each torus
  std::vector<std::size_t> first(d.tori.size());
  std::size_t circles = 0;
  std::map<BlockRef, std::size_t> torus_at;
  for (std::size_t i = 0; i < d.tori.size(); ++i) {
    first[i] = circles;
    circles += static_cast<std::size_t>(d.tori[i].multiplicity);
    torus_at[d.tori[i].inner] = i;
    torus_at[d.tori[i].outer] = i;
  }
  if (circles == 0) return true;
  detail::UnionFind uf(circles);
  for (int k = 1; k <= d.levels; ++k) {
    for (std::size_t b = 0; b < d.level(k).size(); ++b) {
      const auto& block = d.level(k)[b];
      const auto ports = block_ports(block);
      std::vector<std::size_t> attached;
      for (std::size_t p = 0; p < ports.size(); ++p) attached.push_back(torus_at.at({k, static_cast<int>(b), static_cast<int>(p)}));
      if (std::holds_alternative<AnnulusBlock>(block)) {
        const auto m = static_cast<std::size_t>(std::get<AnnulusBlock>(block).copies);
        for (std::size_t c = 0; c < m; ++c) uf.unite(first[attached[0]] + c, first[attached[1]] + c);
      } else {
        for (auto t : attached) {
          for (int c = 0; c < d.tori[t].multiplicity; ++c) uf.unite(first[attached[0]], first[t] + static_cast<std::size_t>(c));
        }
      }
    }
  }
  const auto root = uf.find(0);
  for (std::size_t c = 1; c < circles; ++c) {
    if (uf.find(c) != root) return false;
  }
  return true;
}

inline OpenBookSummary openbook_summary(const RoundFoldDescriptor& d) {
  detail::require_valid(d);
  OpenBookSummary out;
  out.binding_components = d.counts.front();
  out.page_boundary = d.counts.front();
  const auto dirs = compute_directions(d);
  int definite = 0, indefinite = 0;
  for (int k = 1; k <= d.levels; ++k) {
    for (const auto& b : d.level(k)) {
      if (!is_singular(b)) continue;
      const bool is_disk = std::holds_alternative<DiskBlock>(b);
      (is_disk ? definite : indefinite) += 1;
      out.critical_sequence.push_back({k, is_disk, dirs[static_cast<std::size_t>(k - 1)]});
    }
  }
  if (definite + indefinite != d.levels) throw InternalInconsistency("critical circle count differs from level count");
  out.page_euler_characteristic = definite - indefinite;
  out.page_connected = descriptor_page_connected(d);
  if (out.page_connected) {
    const int twice_genus = 2 - out.page_euler_characteristic - out.page_boundary;
    if (twice_genus < 0 || twice_genus % 2 != 0)
      throw InternalInconsistency("page Euler characteristic and boundary give no integral genus");
    out.page_genus = twice_genus / 2;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Deciding whether a directed round fold map exists

/// Torus bundle over the circle with monodromy A in SL(2, Z).
struct TorusBundleInput {
  Mat2 monodromy;
};

enum class Verdict { yes, no, unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "YES";
    case Verdict::no: return "NO";
    case Verdict::unknown: return "UNKNOWN";
  }
  return "?";
}

struct DirectedDecision {
  Verdict verdict = Verdict::unknown;
  std::string reason;  // obstruction for NO, report for UNKNOWN, summary for YES
  std::optional<TreeLabeling> witness;
  std::optional<DecompositionGraph> witness_graph;  // the tree the labeling refers to
};

struct KnownNegative {
  std::string name;
  DecompositionGraph graph;
};

/// Graph manifolds that carry no directed round fold map although they are
/// not caught by the homological test: Sigma_g x S1 for small g.
inline const std::vector<KnownNegative>& known_negative_registry() {
  static const std::vector<KnownNegative> registry = [] {
    std::vector<KnownNegative> r;
    for (int g = 1; g <= 4; ++g) r.push_back({"Sigma_" + std::to_string(g) + " x S1", product_with_circle(g)});
    return r;
  }();
  return registry;
}

inline std::optional<std::string> match_known_negative(const DecompositionGraph& g) {
  const auto text = serialize_graph(g);
  for (const auto& entry : known_negative_registry()) {
    if (serialize_graph(entry.graph) == text) return entry.name;
  }
  return std::nullopt;
}

inline DirectedDecision admits_directed(const TorusBundleInput& input) {
  const auto& a = input.monodromy;
  if (a.det() != 1) throw PreconditionError("torus bundle monodromy must have determinant 1");
  if (a == kIdentity) return {Verdict::no, "known product family: Sigma_1 x S1", {}, {}};
  if (std::abs(a.trace()) >= 3)
    return {Verdict::no, "torus-bundle trace: |trace| = " + std::to_string(std::abs(a.trace())) + " >= 3", {}, {}};
  return {Verdict::unknown, "torus bundle with |trace| = " + std::to_string(std::abs(a.trace())) + " <= 2 is not decided", {}, {}};
}

inline DirectedDecision admits_directed(const DecompositionGraph& input) {
  if (auto vs = validate_graph(input); !vs.empty()) throw ValidationError(std::move(vs));
  if (auto name = match_known_negative(input)) return {Verdict::no, "known product family: " + *name, {}, {}};

  const auto g = reduce_to_pants(input);
  if (g.vertex_count() == 1 && g.edge_count() == 1 && g.pieces.begin()->second.type == PieceType::thick_torus) {
    const Mat2 a = torus_bundle_monodromy(g.gluings.front());
    if (std::abs(a.trace()) >= 3)
      return {Verdict::no, "torus-bundle trace: |trace| = " + std::to_string(std::abs(a.trace())) + " >= 3", {}, {}};
  }

  const auto h1 = first_homology(g);
  const auto betti = graph_betti(g);
  if (h1.free_rank < betti) throw InternalInconsistency("rank H1 = " + std::to_string(h1.free_rank) + " below graph Betti number " + std::to_string(betti));
  if (betti == 0) {
    const auto buffered = insert_plumbing_buffers(g);
    auto labeling = label_tree(buffered);
    construct_directed(buffered, labeling);
    return {Verdict::yes, "decomposition graph is a tree", std::move(labeling), buffered};
  }
  return {Verdict::unknown,
          "graph Betti number " + std::to_string(betti) + " > 0, H1 = " + to_string(h1) +
              "; deciding needs the normal form of the plumbing graph, which is not computed",
          {}, {}};
}

}  // namespace rfm
