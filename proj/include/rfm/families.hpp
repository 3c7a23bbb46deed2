#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include <rfm/decompose.hpp>
#include <rfm/error.hpp>
#include <rfm/graph.hpp>
#include <rfm/matrix2.hpp>

namespace rfm {

namespace detail {

/// (g, x, y) with a x + b y = g = gcd(a, b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

/// Det -1 matrix whose first column is (p, q). Requires gcd(p, q) = 1.
inline Mat2 complete_column(std::int64_t p, std::int64_t q) {
  const auto [g, x, y] = extended_gcd(p, q);
  if (g != 1) throw PreconditionError("(" + std::to_string(p) + ", " + std::to_string(q) + ") is not a primitive vector");
  // p x + q y = 1, so [[p, y], [q, -x]] has det -p x - q y = -1
  return {p, y, q, -x};
}

}  // namespace detail

/// Mapping torus of A in SL(2, Z): one thick torus glued to itself.
inline DecompositionGraph torus_bundle_graph(const Mat2& a) {
  if (a.det() != 1) throw PreconditionError("torus bundle monodromy must have determinant 1");
  DecompositionGraph g;
  g.pieces.emplace(0, PieceKind::thick_torus());
  g.gluings.push_back({{0, 0}, {0, 1}, kThickTransport * a});
  return canonicalize(std::move(g));
}

/// Monodromy recovered from a self-glued thick torus.
inline Mat2 torus_bundle_monodromy(const Gluing& e) {
  return kThickTransport * (e.from.port == 0 ? e.matrix : e.matrix.inverse());
}

/// Sigma_g x S1. Genus 1 is the identity torus bundle; genus g >= 2 is a path
/// of 2g - 2 pants closed up by self-loops at both ends and extra edges
/// pairing the interior pants.
inline DecompositionGraph product_with_circle(int genus) {
  if (genus < 1) throw PreconditionError("genus must be at least 1");
  if (genus == 1) return torus_bundle_graph(kIdentity);
  const int n = 2 * genus - 2;
  DecompositionGraph g;
  for (int i = 0; i < n; ++i) g.pieces.emplace(static_cast<PieceId>(i), PieceKind::pants());
  auto glue = [&](int a, int pa, int b, int pb) {
    g.gluings.push_back({{static_cast<PieceId>(a), pa}, {static_cast<PieceId>(b), pb}, kFiberPreserving});
  };
  glue(0, 0, 0, 1);
  for (int i = 0; i + 1 < n; ++i) glue(i, 2, i + 1, i + 1 == n - 1 && n == 2 ? 2 : 0);
  if (n == 2) {
    glue(1, 0, 1, 1);
  } else {
    glue(n - 1, 1, n - 1, 2);
    for (int i = 1; i + 1 < n - 1; i += 2) glue(i, 1, i + 1, 1);
  }
  return canonicalize(std::move(g));
}

/// Seifert fibered space over S2 with exceptional data (alpha_i, beta_i):
/// a genus-zero bundle with one solid torus per pair, the meridian going to
/// alpha_i * section + beta_i * fiber, then reduced to pants.
inline DecompositionGraph seifert_over_sphere(const std::vector<std::pair<std::int64_t, std::int64_t>>& fibers) {
  DecompositionGraph g;
  const int k = static_cast<int>(fibers.size());
  g.pieces.emplace(0, PieceKind::bundle(k));
  for (int i = 0; i < k; ++i) {
    const auto id = static_cast<PieceId>(i + 1);
    g.pieces.emplace(id, PieceKind::solid_torus());
    g.gluings.push_back({{id, 0}, {0, i}, detail::complete_column(fibers[i].first, fibers[i].second)});
  }
  return reduce_to_pants(g);
}

/// L(p, q): two solid tori, the meridian of the first sent to
/// -q * meridian + p * core direction of the second.
inline DecompositionGraph lens_space(std::int64_t p, std::int64_t q) {
  DecompositionGraph g;
  g.pieces.emplace(0, PieceKind::solid_torus());
  g.pieces.emplace(1, PieceKind::solid_torus());
  g.gluings.push_back({{0, 0}, {1, 0}, detail::complete_column(-q, p)});
  return canonicalize(std::move(g));
}

}  // namespace rfm
