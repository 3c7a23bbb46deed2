#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <rfm/detail/text.hpp>
#include <rfm/error.hpp>
#include <rfm/matrix2.hpp>

namespace rfm {

using PieceId = std::uint32_t;

enum class PieceType { pants, solid_torus, thick_torus, bundle };

/// Kind of a fibered piece. Every piece is a trivial circle bundle over a
/// genus-zero surface; `boundary` is only meaningful for `bundle`.
struct PieceKind {
  PieceType type = PieceType::pants;
  int boundary = 0;

  static constexpr PieceKind pants() { return {PieceType::pants, 0}; }
  static constexpr PieceKind solid_torus() { return {PieceType::solid_torus, 0}; }
  static constexpr PieceKind thick_torus() { return {PieceType::thick_torus, 0}; }
  static constexpr PieceKind bundle(int b) { return {PieceType::bundle, b}; }

  constexpr int port_count() const {
    switch (type) {
      case PieceType::pants: return 3;
      case PieceType::solid_torus: return 1;
      case PieceType::thick_torus: return 2;
      case PieceType::bundle: return boundary;
    }
    return 0;
  }

  /// Euler characteristic of the base surface.
  constexpr int base_euler_characteristic() const { return 2 - port_count(); }

  friend constexpr bool operator==(const PieceKind&, const PieceKind&) = default;
  friend constexpr auto operator<=>(const PieceKind&, const PieceKind&) = default;
};

inline std::string to_string(const PieceKind& k) {
  switch (k.type) {
    case PieceType::pants: return "pants";
    case PieceType::solid_torus: return "solidtorus";
    case PieceType::thick_torus: return "thicktorus";
    case PieceType::bundle: return "bundle " + std::to_string(k.boundary);
  }
  return "?";
}

struct PortRef {
  PieceId piece = 0;
  int port = 0;

  friend constexpr bool operator==(const PortRef&, const PortRef&) = default;
  friend constexpr auto operator<=>(const PortRef&, const PortRef&) = default;
};

inline std::string to_string(const PortRef& p) {
  return std::to_string(p.piece) + "." + std::to_string(p.port);
}

/// Identification of the boundary torus at `from` with the one at `to`.
/// `matrix` carries (mu, lambda) coordinates at `from` to coordinates at `to`.
struct Gluing {
  PortRef from;
  PortRef to;
  Mat2 matrix = kPlumbing;

  /// Same identification read in the opposite direction.
  Gluing reversed() const { return {to, from, matrix.inverse()}; }
  bool is_self_loop() const { return from.piece == to.piece; }

  friend bool operator==(const Gluing&, const Gluing&) = default;
  friend auto operator<=>(const Gluing&, const Gluing&) = default;
};

/// Multigraph of fibered pieces (vertices) and torus gluings (edges).
struct DecompositionGraph {
  std::map<PieceId, PieceKind> pieces;
  std::vector<Gluing> gluings;

  std::size_t vertex_count() const { return pieces.size(); }
  std::size_t edge_count() const { return gluings.size(); }

  PieceId next_id() const { return pieces.empty() ? 0 : pieces.rbegin()->first + 1; }

  const PieceKind& kind(PieceId id) const {
    auto it = pieces.find(id);
    if (it == pieces.end()) throw PreconditionError("no piece with id " + std::to_string(id));
    return it->second;
  }

  friend bool operator==(const DecompositionGraph&, const DecompositionGraph&) = default;
};

/// One incident edge as seen from a vertex. Self-loops appear twice.
struct Incidence {
  PieceId neighbor;
  std::size_t gluing;
};

inline std::map<PieceId, std::vector<Incidence>> incidence(const DecompositionGraph& g) {
  std::map<PieceId, std::vector<Incidence>> out;
  for (const auto& [id, kind] : g.pieces) out[id];
  for (std::size_t i = 0; i < g.gluings.size(); ++i) {
    const auto& e = g.gluings[i];
    out[e.from.piece].push_back({e.to.piece, i});
    out[e.to.piece].push_back({e.from.piece, i});
  }
  return out;
}

inline std::size_t degree(const DecompositionGraph& g, PieceId id) {
  std::size_t d = 0;
  for (const auto& e : g.gluings) d += (e.from.piece == id) + (e.to.piece == id);
  return d;
}

/// Number of connected components of the underlying multigraph.
inline std::size_t component_count(const DecompositionGraph& g) {
  const auto adj = incidence(g);
  std::set<PieceId> seen;
  std::size_t components = 0;
  for (const auto& [start, _] : g.pieces) {
    if (seen.count(start)) continue;
    ++components;
    std::queue<PieceId> queue;
    queue.push(start);
    seen.insert(start);
    while (!queue.empty()) {
      const PieceId v = queue.front();
      queue.pop();
      for (const auto& inc : adj.at(v)) {
        if (seen.insert(inc.neighbor).second) queue.push(inc.neighbor);
      }
    }
  }
  return components;
}

inline bool is_connected(const DecompositionGraph& g) { return component_count(g) == 1; }

/// Checks every structural invariant; an empty result means valid.
/// Gluing indices in messages refer to positions in `g.gluings`.
inline std::vector<std::string> validate_graph(const DecompositionGraph& g) {
  std::vector<std::string> out;
  if (g.pieces.empty()) {
    out.emplace_back("graph is empty");
    return out;
  }
  for (const auto& [id, kind] : g.pieces) {
    if (kind.type == PieceType::bundle && kind.boundary < 0)
      out.push_back("piece " + std::to_string(id) + ": negative boundary count");
  }

  std::map<PortRef, std::vector<std::size_t>> usage;
  bool endpoints_ok = true;
  for (std::size_t i = 0; i < g.gluings.size(); ++i) {
    const auto& e = g.gluings[i];
    const std::string where = "gluing " + std::to_string(i) + ": ";
    for (const PortRef& p : {e.from, e.to}) {
      auto it = g.pieces.find(p.piece);
      if (it == g.pieces.end()) {
        out.push_back(where + "piece " + std::to_string(p.piece) + " does not exist");
        endpoints_ok = false;
      } else if (p.port < 0 || p.port >= it->second.port_count()) {
        out.push_back(where + "port " + to_string(p) + " out of range");
        endpoints_ok = false;
      } else {
        usage[p].push_back(i);
      }
    }
    if (e.from == e.to) out.push_back(where + "port " + to_string(e.from) + " glued to itself");
    const auto det = e.matrix.det();
    if (det != -1) {
      out.push_back(where + "determinant " + (det > 0 ? "+" : "") + std::to_string(det) +
                    ", expected -1");
    }
  }

  for (const auto& [id, kind] : g.pieces) {
    for (int p = 0; p < kind.port_count(); ++p) {
      const PortRef ref{id, p};
      auto it = usage.find(ref);
      if (it == usage.end()) {
        out.push_back("unglued port " + to_string(ref));
      } else if (it->second.size() > 1) {
        std::string list;
        for (auto i : it->second) list += (list.empty() ? "" : ", ") + std::to_string(i);
        out.push_back("port " + to_string(ref) + " glued more than once (gluings " + list + ")");
      }
    }
  }

  if (endpoints_ok && !is_connected(g)) out.emplace_back("graph not connected");
  return out;
}

/// Orients every gluing from its smaller endpoint and sorts the gluing list.
inline DecompositionGraph canonicalize(DecompositionGraph g) {
  for (auto& e : g.gluings) {
    if (e.to < e.from) e = e.reversed();
  }
  std::sort(g.gluings.begin(), g.gluings.end());
  return g;
}

inline std::string serialize_graph(const DecompositionGraph& g) {
  const auto canon = canonicalize(g);
  std::ostringstream os;
  for (const auto& [id, kind] : canon.pieces) os << "piece " << id << ' ' << to_string(kind) << '\n';
  for (const auto& e : canon.gluings) {
    os << "glue " << to_string(e.from) << ' ' << to_string(e.to) << ' ' << e.matrix.a << ' '
       << e.matrix.b << ' ' << e.matrix.c << ' ' << e.matrix.d << '\n';
  }
  return os.str();
}

namespace detail {

inline PortRef parse_port_ref(const Line& line, std::size_t i) {
  const auto& tok = line.at(i, "<id>.<port>");
  const auto dot = tok.text.find('.');
  if (dot == std::string::npos) line.fail(i, "expected <id>.<port>, got '" + tok.text + "'");
  auto id = to_int<PieceId>(std::string_view(tok.text).substr(0, dot));
  auto port = to_int<int>(std::string_view(tok.text).substr(dot + 1));
  if (!id || !port || *port < 0) line.fail(i, "expected <id>.<port>, got '" + tok.text + "'");
  return {*id, *port};
}

}  // namespace detail

/// Parses `.gm` text into a validated, canonical graph.
/// Throws ParseError on malformed text (including duplicate ids) and
/// ValidationError when the graph violates an invariant.
inline DecompositionGraph parse_graph(std::string_view text) {
  DecompositionGraph g;
  for (const auto& line : detail::tokenize(text)) {
    const auto& keyword = line.tokens[0].text;
    if (keyword == "piece") {
      const auto id = detail::parse_int<PieceId>(line, 1, "piece id");
      const auto& kind = line.at(2, "piece kind").text;
      PieceKind pk;
      if (kind == "pants") {
        pk = PieceKind::pants();
        line.expect_size(3);
      } else if (kind == "solidtorus") {
        pk = PieceKind::solid_torus();
        line.expect_size(3);
      } else if (kind == "thicktorus") {
        pk = PieceKind::thick_torus();
        line.expect_size(3);
      } else if (kind == "bundle") {
        const auto b = detail::parse_int<int>(line, 3, "boundary count");
        if (b < 0) line.fail(3, "boundary count must be non-negative");
        pk = PieceKind::bundle(b);
        line.expect_size(4);
      } else {
        line.fail(2, "unknown piece kind '" + kind + "'");
      }
      if (!g.pieces.emplace(id, pk).second) line.fail(1, "duplicate piece id " + std::to_string(id));
    } else if (keyword == "glue") {
      Gluing e;
      e.from = detail::parse_port_ref(line, 1);
      e.to = detail::parse_port_ref(line, 2);
      e.matrix.a = detail::parse_int<std::int64_t>(line, 3, "matrix entry");
      e.matrix.b = detail::parse_int<std::int64_t>(line, 4, "matrix entry");
      e.matrix.c = detail::parse_int<std::int64_t>(line, 5, "matrix entry");
      e.matrix.d = detail::parse_int<std::int64_t>(line, 6, "matrix entry");
      line.expect_size(7);
      g.gluings.push_back(e);
    } else {
      line.fail(0, "unknown statement '" + keyword + "'");
    }
  }
  if (auto violations = validate_graph(g); !violations.empty()) throw ValidationError(std::move(violations));
  return canonicalize(std::move(g));
}

}  // namespace rfm
