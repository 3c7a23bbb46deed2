#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace rfm {

/// 2x2 integer matrix [[a, b], [c, d]] acting on column vectors.
///
/// A gluing matrix maps coordinates in the (mu, lambda) basis of one
/// boundary torus to coordinates in the basis of the torus it is glued to:
/// mu -> a*mu' + c*lambda', lambda -> b*mu' + d*lambda'.
struct Mat2 {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 1;

  constexpr std::int64_t det() const { return a * d - b * c; }
  constexpr std::int64_t trace() const { return a + d; }

  /// Inverse of a unimodular matrix (det = +-1).
  constexpr Mat2 inverse() const {
    const std::int64_t s = det();
    return {s * d, -s * b, -s * c, s * a};
  }

  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
  friend constexpr auto operator<=>(const Mat2&, const Mat2&) = default;
};

inline constexpr Mat2 kIdentity{1, 0, 0, 1};

/// Section <-> fiber swap; the standard plumbing edge.
inline constexpr Mat2 kPlumbing{0, 1, 1, 0};

/// Fiber-preserving identification of two boundary tori of a trivial circle
/// bundle cut along a circle: the section circle flips, the fiber is kept.
/// Also the transport between the two ports of a thick torus.
inline constexpr Mat2 kFiberPreserving{-1, 0, 0, 1};
inline constexpr Mat2 kThickTransport = kFiberPreserving;

inline std::string to_string(const Mat2& m) {
  return "[[" + std::to_string(m.a) + "," + std::to_string(m.b) + "],[" +
         std::to_string(m.c) + "," + std::to_string(m.d) + "]]";
}

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << to_string(m);
}

}  // namespace rfm
