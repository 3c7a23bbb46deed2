#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include <rfm/detail/text.hpp>
#include <rfm/error.hpp>
#include <rfm/graph.hpp>
#include <rfm/matrix2.hpp>

namespace rfm {

enum class Side { inner, outer };
enum class Direction { inward, outward };
enum class PantsOrientation { two_in_one_out, one_in_two_out };

/// D2-fibered block around a definite fold circle. `side` is the side its
/// single boundary torus faces.
struct DiskBlock {
  Side side = Side::inner;
  friend bool operator==(const DiskBlock&, const DiskBlock&) = default;
};

/// P-fibered block around an indefinite fold circle. A twisted block is the
/// non-trivial P-bundle: the monodromy swaps the two circles on its
/// two-circle side, which then form a single torus of multiplicity 2.
struct PantsBlock {
  PantsOrientation orientation = PantsOrientation::two_in_one_out;
  bool twisted = false;
  friend bool operator==(const PantsBlock&, const PantsBlock&) = default;
};

/// `copies` annuli cyclically permuted by the monodromy; no fold.
struct AnnulusBlock {
  int copies = 1;
  friend bool operator==(const AnnulusBlock&, const AnnulusBlock&) = default;
};

using BlockKind = std::variant<DiskBlock, PantsBlock, AnnulusBlock>;

inline bool is_singular(const BlockKind& b) { return !std::holds_alternative<AnnulusBlock>(b); }

struct BlockPort {
  Side side;
  int multiplicity;
};

/// Boundary tori of a block: inner-side ports first, then outer-side ports.
inline std::vector<BlockPort> block_ports(const BlockKind& b) {
  if (const auto* disk = std::get_if<DiskBlock>(&b)) return {{disk->side, 1}};
  if (const auto* ann = std::get_if<AnnulusBlock>(&b)) return {{Side::inner, ann->copies}, {Side::outer, ann->copies}};
  const auto& p = std::get<PantsBlock>(b);
  const bool two_inner = p.orientation == PantsOrientation::two_in_one_out;
  if (p.twisted) {
    return two_inner ? std::vector<BlockPort>{{Side::inner, 2}, {Side::outer, 1}}
                     : std::vector<BlockPort>{{Side::inner, 1}, {Side::outer, 2}};
  }
  return two_inner ? std::vector<BlockPort>{{Side::inner, 1}, {Side::inner, 1}, {Side::outer, 1}}
                   : std::vector<BlockPort>{{Side::inner, 1}, {Side::outer, 1}, {Side::outer, 1}};
}

inline int side_multiplicity(const BlockKind& b, Side side) {
  int n = 0;
  for (const auto& p : block_ports(b)) n += p.side == side ? p.multiplicity : 0;
  return n;
}

inline std::string to_string(const BlockKind& b) {
  if (const auto* disk = std::get_if<DiskBlock>(&b)) return disk->side == Side::inner ? "disk inner" : "disk outer";
  if (const auto* ann = std::get_if<AnnulusBlock>(&b)) return "annulus " + std::to_string(ann->copies);
  const auto& p = std::get<PantsBlock>(b);
  std::string s = p.orientation == PantsOrientation::two_in_one_out ? "pants 2in1out" : "pants 1in2out";
  return p.twisted ? s + " twisted" : s;
}

/// Attachment point of an interface torus. Level 0 addresses binding tube
/// `index` (which has the single port 0).
struct BlockRef {
  int level = 0;
  int index = 0;
  int port = 0;
  friend bool operator==(const BlockRef&, const BlockRef&) = default;
  friend auto operator<=>(const BlockRef&, const BlockRef&) = default;
};

inline std::string to_string(const BlockRef& r) {
  return std::to_string(r.level) + ":" + std::to_string(r.index) + "." + std::to_string(r.port);
}

/// Preimage torus over the circle of radius region + 1/2, joining an outer
/// port at level `region` to an inner port at level `region + 1`.
struct InterfaceTorus {
  int region = 0;
  int multiplicity = 1;
  BlockRef inner;
  BlockRef outer;
  friend bool operator==(const InterfaceTorus&, const InterfaceTorus&) = default;
  friend auto operator<=>(const InterfaceTorus& x, const InterfaceTorus& y) {
    return std::tie(x.region, x.inner, x.outer, x.multiplicity) <=>
           std::tie(y.region, y.inner, y.outer, y.multiplicity);
  }
};

/// Combinatorial shadow of a round fold map with critical circles of radii
/// 1..levels. Level k's blocks live over the annulus [k - 1/2, k + 1/2];
/// region j is the open annulus (j, j + 1) and n_j its fiber component count.
struct RoundFoldDescriptor {
  int levels = 0;
  std::vector<std::vector<BlockKind>> blocks;  // blocks[k - 1] for level k
  std::vector<InterfaceTorus> tori;
  std::vector<int> binding;  // multiplicity of each binding tube
  std::vector<int> counts;   // n_0 .. n_t
  std::vector<Direction> directions;  // cached; see compute_directions

  const std::vector<BlockKind>& level(int k) const { return blocks.at(static_cast<std::size_t>(k - 1)); }

  friend bool operator==(const RoundFoldDescriptor&, const RoundFoldDescriptor&) = default;
};

/// d_k = inward iff n_{k-1} = n_k + 1.
inline std::vector<Direction> compute_directions(const std::vector<int>& counts) {
  std::vector<Direction> out;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    const int delta = counts[k - 1] - counts[k];
    if (delta == 1) {
      out.push_back(Direction::inward);
    } else if (delta == -1) {
      out.push_back(Direction::outward);
    } else {
      throw PreconditionError("level " + std::to_string(k) + ": fiber count jumps by " +
                              std::to_string(std::abs(delta)));
    }
  }
  return out;
}

inline std::vector<Direction> compute_directions(const RoundFoldDescriptor& d) { return compute_directions(d.counts); }

inline std::string to_string(Direction dir) { return dir == Direction::inward ? "inward" : "outward"; }

/// All circles inward. Cross-checks the equivalent criterion n_0 = t.
inline bool is_directed(const RoundFoldDescriptor& d) {
  const auto dirs = compute_directions(d);
  const bool all_inward = std::all_of(dirs.begin(), dirs.end(), [](Direction x) { return x == Direction::inward; });
  const bool count_rule = !d.counts.empty() && d.counts.front() == d.levels;
  if (all_inward != count_rule) {
    throw InternalInconsistency("direction rule and innermost-count rule disagree");
  }
  return all_inward;
}

enum class ViolationKind {
  malformed,
  missing_singular_block,
  multiple_singular_blocks,
  outermost_level,
  region_count_mismatch,
  count_jump,
  port_matching,
  multiplicity_mismatch,
  disconnected,
  binding_multiplicity,
  twisted_pants_in_directed,
  permuted_annulus_in_directed,
  stale_directions,
};

inline std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::malformed: return "malformed";
    case ViolationKind::missing_singular_block: return "missing_singular_block";
    case ViolationKind::multiple_singular_blocks: return "multiple_singular_blocks";
    case ViolationKind::outermost_level: return "outermost_level";
    case ViolationKind::region_count_mismatch: return "region_count_mismatch";
    case ViolationKind::count_jump: return "count_jump";
    case ViolationKind::port_matching: return "port_matching";
    case ViolationKind::multiplicity_mismatch: return "multiplicity_mismatch";
    case ViolationKind::disconnected: return "disconnected";
    case ViolationKind::binding_multiplicity: return "binding_multiplicity";
    case ViolationKind::twisted_pants_in_directed: return "twisted_pants_in_directed";
    case ViolationKind::permuted_annulus_in_directed: return "permuted_annulus_in_directed";
    case ViolationKind::stale_directions: return "stale_directions";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string message;
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Total structural verifier; an empty result means the descriptor is valid.
inline std::vector<Violation> verify_descriptor(const RoundFoldDescriptor& d) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind k, std::string msg) { out.push_back({k, std::move(msg)}); };
  const int t = d.levels;

  if (t < 1) add(ViolationKind::malformed, "descriptor has no levels");
  if (static_cast<int>(d.blocks.size()) != t)
    add(ViolationKind::malformed, "block table has " + std::to_string(d.blocks.size()) + " levels, expected " + std::to_string(t));
  if (static_cast<int>(d.counts.size()) != t + 1)
    add(ViolationKind::malformed, "counts has " + std::to_string(d.counts.size()) + " entries, expected " + std::to_string(t + 1));
  if (!out.empty()) return out;

  for (int k = 1; k <= t; ++k) {
    for (const auto& b : d.level(k)) {
      if (const auto* ann = std::get_if<AnnulusBlock>(&b); ann && ann->copies < 1)
        add(ViolationKind::malformed, "level " + std::to_string(k) + ": annulus block with " + std::to_string(ann->copies) + " copies");
    }
  }
  if (!out.empty()) return out;

  // (a) one fold circle per level
  for (int k = 1; k <= t; ++k) {
    const auto n = std::count_if(d.level(k).begin(), d.level(k).end(), is_singular);
    if (n == 0) add(ViolationKind::missing_singular_block, "level " + std::to_string(k) + ": no singular block");
    if (n > 1) add(ViolationKind::multiple_singular_blocks, "level " + std::to_string(k) + ": " + std::to_string(n) + " singular blocks");
  }

  // (b) outermost level
  const auto& top = d.level(t);
  if (top.size() != 1 || top.front() != BlockKind{DiskBlock{Side::inner}})
    add(ViolationKind::outermost_level, "level " + std::to_string(t) + ": outermost level must be a single inner disk block");
  if (d.counts.back() != 0)
    add(ViolationKind::outermost_level, "n_" + std::to_string(t) + " = " + std::to_string(d.counts.back()) + ", expected 0");

  // (d) count steps
  bool counts_consistent = true;
  for (int k = 1; k <= t; ++k) {
    const int jump = std::abs(d.counts[k - 1] - d.counts[k]);
    if (jump != 1) {
      counts_consistent = false;
      add(ViolationKind::count_jump, "level " + std::to_string(k) + ": fiber count jumps by " + std::to_string(jump));
    }
  }

  // (g) binding tubes
  for (std::size_t i = 0; i < d.binding.size(); ++i) {
    if (d.binding[i] != 1)
      add(ViolationKind::binding_multiplicity, "binding tube " + std::to_string(i) + ": multiplicity " + std::to_string(d.binding[i]) + ", expected 1");
  }

  // (e) interface attachments
  auto port_of = [&](const BlockRef& r) -> std::optional<BlockPort> {
    if (r.level == 0) {
      if (r.index < 0 || r.index >= static_cast<int>(d.binding.size()) || r.port != 0) return std::nullopt;
      return BlockPort{Side::outer, d.binding[r.index]};
    }
    if (r.level < 1 || r.level > t || r.index < 0 || r.index >= static_cast<int>(d.level(r.level).size())) return std::nullopt;
    const auto ports = block_ports(d.level(r.level)[r.index]);
    if (r.port < 0 || r.port >= static_cast<int>(ports.size())) return std::nullopt;
    return ports[r.port];
  };

  // Node numbering for connectivity: binding tubes, then blocks by level.
  std::vector<std::size_t> level_offset(static_cast<std::size_t>(t) + 1, 0);
  std::size_t nodes = d.binding.size();
  for (int k = 1; k <= t; ++k) {
    level_offset[k] = nodes;
    nodes += d.level(k).size();
  }
  auto node_of = [&](const BlockRef& r) { return r.level == 0 ? static_cast<std::size_t>(r.index) : level_offset[r.level] + r.index; };
  detail::UnionFind components(nodes);

  std::map<BlockRef, int> usage;
  std::vector<int> torus_sum(static_cast<std::size_t>(t), 0);
  for (std::size_t i = 0; i < d.tori.size(); ++i) {
    const auto& tor = d.tori[i];
    const std::string where = "torus " + std::to_string(i) + ": ";
    if (tor.region < 0 || tor.region >= t) {
      add(ViolationKind::malformed, where + "region " + std::to_string(tor.region) + " out of range");
      continue;
    }
    torus_sum[tor.region] += tor.multiplicity;
    bool ok = true;
    if (tor.inner.level != tor.region || tor.outer.level != tor.region + 1) {
      add(ViolationKind::port_matching, where + "attachments do not straddle radius " + std::to_string(tor.region) + ".5");
      ok = false;
    }
    for (const auto& [ref, side] : {std::pair{tor.inner, Side::outer}, std::pair{tor.outer, Side::inner}}) {
      const auto port = port_of(ref);
      if (!port) {
        add(ViolationKind::port_matching, where + "no such port " + to_string(ref));
        ok = false;
        continue;
      }
      if (port->side != side) {
        add(ViolationKind::port_matching, where + "port " + to_string(ref) + " faces the wrong side");
        ok = false;
      }
      if (port->multiplicity != tor.multiplicity) {
        add(ViolationKind::multiplicity_mismatch, where + "multiplicity " + std::to_string(tor.multiplicity) + " but port " +
                                                      to_string(ref) + " carries " + std::to_string(port->multiplicity));
      }
      ++usage[ref];
    }
    if (ok) components.unite(node_of(tor.inner), node_of(tor.outer));
  }

  auto check_usage = [&](const BlockRef& ref) {
    auto it = usage.find(ref);
    const int n = it == usage.end() ? 0 : it->second;
    if (n == 0) add(ViolationKind::port_matching, "port " + to_string(ref) + " unattached");
    if (n > 1) add(ViolationKind::port_matching, "port " + to_string(ref) + " attached " + std::to_string(n) + " times");
  };
  for (std::size_t i = 0; i < d.binding.size(); ++i) check_usage({0, static_cast<int>(i), 0});
  for (int k = 1; k <= t; ++k) {
    for (std::size_t i = 0; i < d.level(k).size(); ++i) {
      const auto n = block_ports(d.level(k)[i]).size();
      for (std::size_t p = 0; p < n; ++p) check_usage({k, static_cast<int>(i), static_cast<int>(p)});
    }
  }

  // (c) per-region circle counts from the tori and from each side's ports
  for (int j = 0; j < t; ++j) {
    const int expected = d.counts[j];
    int below = 0;
    if (j == 0) {
      below = std::accumulate(d.binding.begin(), d.binding.end(), 0);
    } else {
      for (const auto& b : d.level(j)) below += side_multiplicity(b, Side::outer);
    }
    int above = 0;
    for (const auto& b : d.level(j + 1)) above += side_multiplicity(b, Side::inner);
    const std::string region = "region " + std::to_string(j) + ": ";
    if (torus_sum[j] != expected)
      add(ViolationKind::region_count_mismatch, region + "interface tori carry " + std::to_string(torus_sum[j]) + " circles, expected n_" + std::to_string(j) + " = " + std::to_string(expected));
    if (below != expected)
      add(ViolationKind::region_count_mismatch, region + (j == 0 ? std::string("binding") : "level " + std::to_string(j) + " outer ports") + " carry " + std::to_string(below) + " circles, expected " + std::to_string(expected));
    if (above != expected)
      add(ViolationKind::region_count_mismatch, region + "level " + std::to_string(j + 1) + " inner ports carry " + std::to_string(above) + " circles, expected " + std::to_string(expected));
  }
  {
    int outer_top = 0;
    for (const auto& b : d.level(t)) outer_top += side_multiplicity(b, Side::outer);
    if (outer_top != 0) add(ViolationKind::region_count_mismatch, "level " + std::to_string(t) + " has outer ports beyond the last circle");
  }

  // (f) connected source manifold
  if (nodes > 0) {
    const auto root = components.find(0);
    for (std::size_t n = 1; n < nodes; ++n) {
      if (components.find(n) != root) {
        add(ViolationKind::disconnected, "block adjacency graph not connected");
        break;
      }
    }
  }

  if (counts_consistent) {
    const auto dirs = compute_directions(d.counts);
    if (!d.directions.empty() && d.directions != dirs)
      add(ViolationKind::stale_directions, "cached directions disagree with fiber counts");

    // (h) in a directed map no block carries a non-trivial permutation
    const bool directed = std::all_of(dirs.begin(), dirs.end(), [](Direction x) { return x == Direction::inward; });
    if (directed) {
      for (int k = 1; k <= t; ++k) {
        for (const auto& b : d.level(k)) {
          if (const auto* p = std::get_if<PantsBlock>(&b); p && p->twisted)
            add(ViolationKind::twisted_pants_in_directed, "level " + std::to_string(k) + ": twisted pants block in a directed map");
          if (const auto* a = std::get_if<AnnulusBlock>(&b); a && a->copies > 1)
            add(ViolationKind::permuted_annulus_in_directed, "level " + std::to_string(k) + ": permuted annulus block in a directed map");
        }
      }
    }
  }
  return out;
}

inline bool has_violation(const std::vector<Violation>& vs, ViolationKind kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

namespace detail {

inline void require_valid(const RoundFoldDescriptor& d) {
  const auto vs = verify_descriptor(d);
  if (vs.empty()) return;
  std::vector<std::string> msgs;
  for (const auto& v : vs) msgs.push_back(v.message);
  throw ValidationError(std::move(msgs));
}

}  // namespace detail

/// Decomposition graph read off the block structure: binding tubes and disk
/// blocks become solid tori, pants blocks P x S1, annulus blocks thick tori.
/// Piece ids: binding tubes 0..n_0-1, then blocks in level order.
///
/// Tori between blocks identify fiber circle with fiber circle and angular
/// circle with angular circle (kFiberPreserving); the tori around the binding
/// swap them (kPlumbing), since a binding tube's meridian is angular.
inline DecompositionGraph extract_decomposition_graph(const RoundFoldDescriptor& d) {
  detail::require_valid(d);
  DecompositionGraph g;
  std::map<std::pair<int, int>, PieceId> ids;
  PieceId next = 0;
  for (std::size_t i = 0; i < d.binding.size(); ++i) {
    ids[{0, static_cast<int>(i)}] = next;
    g.pieces.emplace(next++, PieceKind::solid_torus());
  }
  for (int k = 1; k <= d.levels; ++k) {
    for (std::size_t i = 0; i < d.level(k).size(); ++i) {
      const auto& b = d.level(k)[i];
      PieceKind kind;
      if (std::holds_alternative<DiskBlock>(b)) {
        kind = PieceKind::solid_torus();
      } else if (const auto* p = std::get_if<PantsBlock>(&b)) {
        if (p->twisted) throw PreconditionError("twisted pants block not representable (level " + std::to_string(k) + ")");
        kind = PieceKind::pants();
      } else {
        if (std::get<AnnulusBlock>(b).copies != 1)
          throw PreconditionError("permuted annulus block not representable (level " + std::to_string(k) + ")");
        kind = PieceKind::thick_torus();
      }
      ids[{k, static_cast<int>(i)}] = next;
      g.pieces.emplace(next++, kind);
    }
  }
  for (const auto& tor : d.tori) {
    const PortRef from{ids.at({tor.inner.level, tor.inner.index}), tor.inner.port};
    const PortRef to{ids.at({tor.outer.level, tor.outer.index}), tor.outer.port};
    g.gluings.push_back({from, to, tor.inner.level == 0 ? kPlumbing : kFiberPreserving});
  }
  return canonicalize(std::move(g));
}

// ---------------------------------------------------------------------------
// .rfd text format

inline std::string serialize_descriptor(const RoundFoldDescriptor& d) {
  std::ostringstream os;
  os << "levels " << d.levels << '\n';
  os << "binding " << d.binding.size() << '\n';
  os << "counts";
  for (int n : d.counts) os << ' ' << n;
  os << '\n';
  for (int k = 1; k <= d.levels && k <= static_cast<int>(d.blocks.size()); ++k) {
    for (const auto& b : d.level(k)) os << "block " << k << ' ' << to_string(b) << '\n';
  }
  auto tori = d.tori;
  std::sort(tori.begin(), tori.end());
  for (const auto& tor : tori) {
    os << "torus " << tor.region << ".5 mu " << tor.multiplicity << ' ' << to_string(tor.inner) << ' '
       << to_string(tor.outer) << '\n';
  }
  return os.str();
}

namespace detail {

inline BlockRef parse_block_ref(const Line& line, std::size_t i) {
  const auto& tok = line.at(i, "<level>:<index>.<port>");
  const std::string_view s = tok.text;
  const auto colon = s.find(':');
  const auto dot = s.find('.', colon == std::string_view::npos ? 0 : colon);
  if (colon == std::string_view::npos || dot == std::string_view::npos)
    line.fail(i, "expected <level>:<index>.<port>, got '" + tok.text + "'");
  auto level = to_int<int>(s.substr(0, colon));
  auto index = to_int<int>(s.substr(colon + 1, dot - colon - 1));
  auto port = to_int<int>(s.substr(dot + 1));
  if (!level || !index || !port || *level < 0 || *index < 0 || *port < 0)
    line.fail(i, "expected <level>:<index>.<port>, got '" + tok.text + "'");
  return {*level, *index, *port};
}

}  // namespace detail

/// Parses `.rfd` text. Only syntax is checked here; structural problems are
/// left for verify_descriptor. Directions are cached when counts allow.
inline RoundFoldDescriptor parse_descriptor(std::string_view text) {
  RoundFoldDescriptor d;
  bool have_levels = false;
  for (const auto& line : detail::tokenize(text)) {
    const auto& keyword = line.tokens[0].text;
    if (keyword == "levels") {
      if (have_levels) line.fail(0, "duplicate levels statement");
      d.levels = detail::parse_int<int>(line, 1, "level count");
      if (d.levels < 1) line.fail(1, "level count must be positive");
      line.expect_size(2);
      d.blocks.assign(static_cast<std::size_t>(d.levels), {});
      have_levels = true;
    } else if (!have_levels) {
      line.fail(0, "expected 'levels' before '" + keyword + "'");
    } else if (keyword == "binding") {
      const int n = detail::parse_int<int>(line, 1, "binding count");
      if (n < 0) line.fail(1, "binding count must be non-negative");
      line.expect_size(2);
      d.binding.assign(static_cast<std::size_t>(n), 1);
    } else if (keyword == "counts") {
      d.counts.clear();
      for (std::size_t i = 1; i < line.tokens.size(); ++i) d.counts.push_back(detail::parse_int<int>(line, i, "fiber count"));
    } else if (keyword == "block") {
      const int k = detail::parse_int<int>(line, 1, "level");
      if (k < 1 || k > d.levels) line.fail(1, "level " + std::to_string(k) + " out of range");
      const auto& kind = line.at(2, "block kind").text;
      BlockKind b;
      if (kind == "disk") {
        const auto& side = line.at(3, "inner|outer").text;
        if (side != "inner" && side != "outer") line.fail(3, "expected inner|outer, got '" + side + "'");
        b = DiskBlock{side == "inner" ? Side::inner : Side::outer};
        line.expect_size(4);
      } else if (kind == "pants") {
        const auto& orient = line.at(3, "2in1out|1in2out").text;
        if (orient != "2in1out" && orient != "1in2out") line.fail(3, "expected 2in1out|1in2out, got '" + orient + "'");
        PantsBlock p{orient == "2in1out" ? PantsOrientation::two_in_one_out : PantsOrientation::one_in_two_out, false};
        if (line.tokens.size() > 4) {
          if (line.tokens[4].text != "twisted") line.fail(4, "expected 'twisted'");
          p.twisted = true;
        }
        line.expect_size(p.twisted ? 5 : 4);
        b = p;
      } else if (kind == "annulus") {
        b = AnnulusBlock{detail::parse_int<int>(line, 3, "copy count")};
        line.expect_size(4);
      } else {
        line.fail(2, "unknown block kind '" + kind + "'");
      }
      d.blocks[static_cast<std::size_t>(k - 1)].push_back(b);
    } else if (keyword == "torus") {
      const auto& radius = line.at(1, "radius k.5").text;
      if (radius.size() < 3 || radius.substr(radius.size() - 2) != ".5") line.fail(1, "expected radius of the form k.5");
      auto region = detail::to_int<int>(std::string_view(radius).substr(0, radius.size() - 2));
      if (!region || *region < 0) line.fail(1, "expected radius of the form k.5");
      if (line.at(2, "'mu'").text != "mu") line.fail(2, "expected 'mu'");
      InterfaceTorus tor;
      tor.region = *region;
      tor.multiplicity = detail::parse_int<int>(line, 3, "multiplicity");
      tor.inner = detail::parse_block_ref(line, 4);
      tor.outer = detail::parse_block_ref(line, 5);
      line.expect_size(6);
      d.tori.push_back(tor);
    } else {
      line.fail(0, "unknown statement '" + keyword + "'");
    }
  }
  if (!have_levels) throw ParseError(1, 1, "missing 'levels' statement");
  try {
    d.directions = compute_directions(d.counts);
  } catch (const PreconditionError&) {
    d.directions.clear();
  }
  return d;
}

}  // namespace rfm
