#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <rfm/error.hpp>
#include <rfm/graph.hpp>
#include <rfm/matrix2.hpp>

namespace rfm {

/// Decomposition of a genus-zero surface with b boundary circles into pairs
/// of pants and disks. Pieces are reported as the kinds of their circle-bundle
/// thickenings (pants -> P x S1, solid torus -> D2 x S1).
struct SurfaceDecomposition {
  struct Seam {
    int piece_a, port_a;
    int piece_b, port_b;
  };

  std::vector<PieceKind> pieces;
  std::vector<Seam> seams;
  /// Original boundary circle i sits at (piece, port) = boundary[i].
  std::vector<std::pair<int, int>> boundary;

  int euler_characteristic() const {
    int chi = 0;
    for (const auto& p : pieces) chi += p.base_euler_characteristic();
    return chi;
  }
};

/// b = 0: two disks; b = 1: one disk; b = 2: pants capped by a disk;
/// b >= 3: a chain of b - 2 pants.
inline SurfaceDecomposition pants_decompose(int b) {
  if (b < 0) throw PreconditionError("boundary count must be non-negative");
  SurfaceDecomposition out;
  if (b == 0) {
    out.pieces = {PieceKind::solid_torus(), PieceKind::solid_torus()};
    out.seams = {{0, 0, 1, 0}};
  } else if (b == 1) {
    out.pieces = {PieceKind::solid_torus()};
    out.boundary = {{0, 0}};
  } else if (b == 2) {
    out.pieces = {PieceKind::pants(), PieceKind::solid_torus()};
    out.seams = {{0, 2, 1, 0}};
    out.boundary = {{0, 0}, {0, 1}};
  } else {
    const int k = b - 2;
    out.pieces.assign(k, PieceKind::pants());
    for (int i = 0; i + 1 < k; ++i) out.seams.push_back({i, 2, i + 1, 0});
    out.boundary.push_back({0, 0});
    if (k == 1) {
      out.boundary.push_back({0, 1});
      out.boundary.push_back({0, 2});
    } else {
      out.boundary.push_back({0, 1});
      for (int i = 1; i + 1 < k; ++i) out.boundary.push_back({i, 1});
      out.boundary.push_back({k - 1, 1});
      out.boundary.push_back({k - 1, 2});
    }
  }
  return out;
}

/// Replaces every genus-zero bundle piece by its pants/disk decomposition.
/// The first new piece keeps the original id; the rest get fresh ids.
/// Internal seams are fiber-preserving; external gluings keep their matrices.
inline DecompositionGraph reduce_to_pants(const DecompositionGraph& g) {
  DecompositionGraph out;
  std::map<PortRef, PortRef> remap;
  PieceId fresh = g.next_id();

  for (const auto& [id, kind] : g.pieces) {
    if (kind.type != PieceType::bundle) {
      out.pieces.emplace(id, kind);
      continue;
    }
    const auto dec = pants_decompose(kind.boundary);
    std::vector<PieceId> ids;
    for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
      ids.push_back(i == 0 ? id : fresh++);
      out.pieces.emplace(ids.back(), dec.pieces[i]);
    }
    for (const auto& s : dec.seams) {
      out.gluings.push_back({{ids[s.piece_a], s.port_a}, {ids[s.piece_b], s.port_b}, kFiberPreserving});
    }
    for (std::size_t i = 0; i < dec.boundary.size(); ++i) {
      remap[{id, static_cast<int>(i)}] = {ids[dec.boundary[i].first], dec.boundary[i].second};
    }
  }

  auto moved = [&](const PortRef& p) {
    auto it = remap.find(p);
    return it == remap.end() ? p : it->second;
  };
  for (const auto& e : g.gluings) out.gluings.push_back({moved(e.from), moved(e.to), e.matrix});
  return canonicalize(std::move(out));
}

/// True when every gluing is a standard plumbing edge or touches a buffer.
inline bool is_plumbing_type(const DecompositionGraph& g) {
  for (const auto& e : g.gluings) {
    const bool buffered = g.kind(e.from.piece).type == PieceType::thick_torus ||
                          g.kind(e.to.piece).type == PieceType::thick_torus;
    if (e.matrix != kPlumbing && !buffered) return false;
  }
  return true;
}

/// Matrix for the far side of a buffer whose near side is a plumbing edge,
/// chosen so that far * kThickTransport * kPlumbing == m.
inline Mat2 buffer_far_side(const Mat2& m) { return m * (kThickTransport * kPlumbing).inverse(); }

/// Routes every non-plumbing gluing between two non-buffer pieces through a
/// new thick torus: from -> T.0 by kPlumbing, T.1 -> to by buffer_far_side.
inline DecompositionGraph insert_plumbing_buffers(const DecompositionGraph& g) {
  DecompositionGraph out;
  out.pieces = g.pieces;
  PieceId fresh = g.next_id();
  for (const auto& e : canonicalize(g).gluings) {
    const bool buffered = g.kind(e.from.piece).type == PieceType::thick_torus ||
                          g.kind(e.to.piece).type == PieceType::thick_torus;
    if (e.matrix == kPlumbing || buffered) {
      out.gluings.push_back(e);
      continue;
    }
    const PieceId t = fresh++;
    out.pieces.emplace(t, PieceKind::thick_torus());
    out.gluings.push_back({e.from, {t, 0}, kPlumbing});
    out.gluings.push_back({{t, 1}, e.to, buffer_far_side(e.matrix)});
  }
  return canonicalize(std::move(out));
}

/// Removes every thick torus that joins two gluings (not a self-loop),
/// composing the matrices across it. Self-glued thick tori are kept.
inline DecompositionGraph smooth_buffers(DecompositionGraph g) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [id, kind] : g.pieces) {
      if (kind.type != PieceType::thick_torus) continue;
      std::vector<std::size_t> incident;
      bool loop = false;
      for (std::size_t i = 0; i < g.gluings.size(); ++i) {
        const auto& e = g.gluings[i];
        if (e.from.piece == id || e.to.piece == id) incident.push_back(i);
        if (e.from.piece == id && e.to.piece == id) loop = true;
      }
      if (loop || incident.size() != 2) continue;

      Gluing in = g.gluings[incident[0]];
      if (in.from.piece == id) in = in.reversed();
      Gluing out = g.gluings[incident[1]];
      if (out.to.piece == id) out = out.reversed();
      const Gluing merged{in.from, out.to, out.matrix * kThickTransport * in.matrix};

      g.gluings.erase(g.gluings.begin() + static_cast<std::ptrdiff_t>(incident[1]));
      g.gluings.erase(g.gluings.begin() + static_cast<std::ptrdiff_t>(incident[0]));
      g.gluings.push_back(merged);
      g.pieces.erase(id);
      changed = true;
      break;
    }
  }
  return canonicalize(std::move(g));
}

/// Labels 1..s on the vertices of a tree. The root carries label s.
struct TreeLabeling {
  std::map<PieceId, int> labels;
  PieceId root = 0;

  int size() const { return static_cast<int>(labels.size()); }
  int operator[](PieceId v) const { return labels.at(v); }

  friend bool operator==(const TreeLabeling&, const TreeLabeling&) = default;
};

namespace detail {

inline void require_labelable_tree(const DecompositionGraph& g) {
  if (g.pieces.empty()) throw PreconditionError("not a tree: graph is empty");
  std::set<std::pair<PieceId, PieceId>> seen;
  for (const auto& e : g.gluings) {
    if (e.is_self_loop()) throw PreconditionError("not a tree: self-loop at piece " + std::to_string(e.from.piece));
    auto key = std::minmax(e.from.piece, e.to.piece);
    if (!seen.insert(key).second) {
      throw PreconditionError("not a tree: multiple gluings between pieces " + std::to_string(key.first) +
                              " and " + std::to_string(key.second));
    }
  }
  if (g.edge_count() + 1 != g.vertex_count() || !is_connected(g)) throw PreconditionError("not a tree");
  for (const auto& [id, kind] : g.pieces) {
    if (degree(g, id) > 3) throw PreconditionError("degree > 3 at piece " + std::to_string(id));
  }
}

}  // namespace detail

/// Reverse breadth-first labeling from the smallest-id solid-torus leaf.
/// Every prefix of a BFS order spans a connected subtree, so the vertices
/// with labels >= j are connected for every j.
inline TreeLabeling label_tree(const DecompositionGraph& g) {
  detail::require_labelable_tree(g);
  std::optional<PieceId> root;
  for (const auto& [id, kind] : g.pieces) {
    if (kind.type == PieceType::solid_torus && degree(g, id) == 1) {
      root = id;
      break;
    }
  }
  if (!root) throw PreconditionError("no solid-torus leaf");

  const auto adj = incidence(g);
  std::vector<PieceId> order;
  std::set<PieceId> seen{*root};
  std::queue<PieceId> queue;
  queue.push(*root);
  while (!queue.empty()) {
    const PieceId v = queue.front();
    queue.pop();
    order.push_back(v);
    std::vector<PieceId> next;
    for (const auto& inc : adj.at(v)) {
      if (!seen.count(inc.neighbor)) next.push_back(inc.neighbor);
    }
    std::sort(next.begin(), next.end());
    for (PieceId n : next) {
      seen.insert(n);
      queue.push(n);
    }
  }

  TreeLabeling out;
  out.root = *root;
  const int s = static_cast<int>(order.size());
  for (int i = 0; i < s; ++i) out.labels[order[i]] = s - i;
  return out;
}

/// Violations of the three labeling conditions; empty when `l` is valid for `g`.
inline std::vector<std::string> check_labeling(const DecompositionGraph& g, const TreeLabeling& l) {
  std::vector<std::string> out;
  const int s = static_cast<int>(g.vertex_count());
  std::set<int> used;
  for (const auto& [id, label] : l.labels) {
    if (!g.pieces.count(id)) out.push_back("label on unknown piece " + std::to_string(id));
    if (label < 1 || label > s) out.push_back("label " + std::to_string(label) + " out of range");
    if (!used.insert(label).second) out.push_back("label " + std::to_string(label) + " used twice");
  }
  if (static_cast<int>(l.labels.size()) != s) out.emplace_back("labeling is not a bijection");
  if (!out.empty()) return out;

  auto root = l.labels.find(l.root);
  if (root == l.labels.end() || root->second != s) out.emplace_back("root does not carry the top label");
  if (degree(g, l.root) != 1) out.emplace_back("root does not have degree one");

  const auto adj = incidence(g);
  // Grow the set of vertices with labels >= j downward; each new vertex must
  // touch the set already grown.
  std::vector<PieceId> by_label(static_cast<std::size_t>(s) + 1);
  for (const auto& [id, label] : l.labels) by_label[label] = id;
  std::set<PieceId> grown{by_label[s]};
  for (int j = s - 1; j >= 1; --j) {
    const PieceId v = by_label[j];
    bool touches = false;
    for (const auto& inc : adj.at(v)) touches = touches || grown.count(inc.neighbor);
    if (!touches) out.push_back("labels >= " + std::to_string(j) + " are not connected");
    grown.insert(v);
  }
  return out;
}

/// The unique neighbor of `v` with a larger label. Requires v != root.
inline PieceId label_parent(const DecompositionGraph& g, const TreeLabeling& l, PieceId v) {
  const int own = l[v];
  std::optional<PieceId> parent;
  const auto adj = incidence(g);
  for (const auto& inc : adj.at(v)) {
    if (l[inc.neighbor] > own) {
      if (parent && *parent != inc.neighbor) throw PreconditionError("vertex " + std::to_string(v) + " has two parents");
      parent = inc.neighbor;
    }
  }
  if (!parent) throw PreconditionError("vertex " + std::to_string(v) + " has no parent");
  return *parent;
}

}  // namespace rfm
