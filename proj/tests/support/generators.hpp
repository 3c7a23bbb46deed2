#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <rfm/graph.hpp>
#include <rfm/matrix2.hpp>

namespace rfm::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random det -1 matrix with entries in [-bound, bound].
inline Mat2 random_gluing_matrix(Rng& rng, int bound = 5) {
  while (true) {
    Mat2 m{uniform(rng, -bound, bound), uniform(rng, -bound, bound), uniform(rng, -bound, bound), uniform(rng, -bound, bound)};
    if (m.det() == -1) return m;
  }
}

/// Random plumbing tree of pants, solid tori and thick tori whose vertex
/// count stays within `max_vertices` (at least 2). Ids are shuffled.
inline DecompositionGraph random_tree(Rng& rng, int max_vertices = 50) {
  // vertices = pants + thick + (pants + 2)
  const int pants = uniform(rng, 0, (max_vertices - 2) / 2);
  const int thick = uniform(rng, 0, max_vertices - 2 - 2 * pants);
  const int total = 2 * pants + thick + 2;

  std::vector<PieceId> ids(static_cast<std::size_t>(total));
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);

  std::vector<PieceKind> inner;
  inner.insert(inner.end(), static_cast<std::size_t>(pants), PieceKind::pants());
  inner.insert(inner.end(), static_cast<std::size_t>(thick), PieceKind::thick_torus());
  std::shuffle(inner.begin(), inner.end(), rng);

  DecompositionGraph g;
  std::vector<PortRef> open;
  std::size_t next = 0;
  auto add_piece = [&](PieceKind kind) {
    const PieceId id = ids[next++];
    g.pieces.emplace(id, kind);
    return id;
  };
  auto glue = [&](PortRef a, PortRef b) {
    if (uniform(rng, 0, 1)) std::swap(a, b);
    g.gluings.push_back({a, b, kPlumbing});
  };

  if (inner.empty()) {
    const PieceId a = add_piece(PieceKind::solid_torus());
    const PieceId b = add_piece(PieceKind::solid_torus());
    glue({a, 0}, {b, 0});
    return g;
  }
  {
    const PieceId first = add_piece(inner.front());
    for (int p = 0; p < inner.front().port_count(); ++p) open.push_back({first, p});
  }
  for (std::size_t i = 1; i < inner.size(); ++i) {
    const auto slot = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(open.size()) - 1));
    const PortRef target = open[slot];
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(slot));
    const PieceId id = add_piece(inner[i]);
    const int used = uniform(rng, 0, inner[i].port_count() - 1);
    glue(target, {id, used});
    for (int p = 0; p < inner[i].port_count(); ++p) {
      if (p != used) open.push_back({id, p});
    }
  }
  for (const auto& port : open) glue(port, {add_piece(PieceKind::solid_torus()), 0});
  return g;
}

/// Random connected valid graph with at most `max_vertices` pieces and
/// random det -1 gluings.
inline DecompositionGraph random_graph(Rng& rng, int max_vertices = 10) {
  while (true) {
    DecompositionGraph g;
    const int n = uniform(rng, 1, max_vertices);
    std::vector<PortRef> ports;
    for (int i = 0; i < n; ++i) {
      PieceKind kind;
      switch (uniform(rng, 0, 3)) {
        case 0: kind = PieceKind::pants(); break;
        case 1: kind = PieceKind::solid_torus(); break;
        case 2: kind = PieceKind::thick_torus(); break;
        default: kind = PieceKind::bundle(uniform(rng, 1, 4)); break;
      }
      const auto id = static_cast<PieceId>(i);
      g.pieces.emplace(id, kind);
      for (int p = 0; p < kind.port_count(); ++p) ports.push_back({id, p});
    }
    if (ports.size() % 2 == 1) {
      const auto id = static_cast<PieceId>(n);
      g.pieces.emplace(id, PieceKind::solid_torus());
      ports.push_back({id, 0});
    }
    std::shuffle(ports.begin(), ports.end(), rng);
    for (std::size_t i = 0; i + 1 < ports.size(); i += 2) g.gluings.push_back({ports[i], ports[i + 1], random_gluing_matrix(rng)});
    if (is_connected(g)) return g;
  }
}

}  // namespace rfm::testing
