#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rfm {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  /// row dst += factor * row src
  void add_row(std::size_t dst, std::size_t src, const BigInt& factor) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!is_zero((*this)(src, c))) (*this)(dst, c) += factor * (*this)(src, c);
    }
  }
  /// col dst += factor * col src
  void add_col(std::size_t dst, std::size_t src, const BigInt& factor) {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!is_zero((*this)(r, src))) (*this)(r, dst) += factor * (*this)(r, src);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const BigInt& v = x(i, k);
        if (is_zero(v)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += v * y(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  static bool is_zero(const BigInt& v) { return v.is_zero(); }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// left * input * right == diagonal, with left and right unimodular and the
/// diagonal a non-negative divisibility chain d_1 | d_2 | ... followed by zeros.
struct SmithForm {
  IntMatrix diagonal;
  IntMatrix left;
  IntMatrix right;

  std::size_t rank() const {
    std::size_t r = 0;
    const auto n = std::min(diagonal.rows(), diagonal.cols());
    while (r < n && !diagonal(r, r).is_zero()) ++r;
    return r;
  }

  std::vector<BigInt> invariant_factors() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < rank(); ++i) out.push_back(diagonal(i, i));
    return out;
  }
};

namespace detail {

// Min-magnitude pivoting: each pass either clears the pivot's row and column
// or leaves a remainder strictly smaller than the pivot, which becomes the
// next pivot. Once cleared, a pivot that fails to divide some entry of the
// trailing block absorbs that entry's row and the pass repeats.
inline void smith_reduce(IntMatrix& a, IntMatrix* left, IntMatrix* right) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  auto row_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (left) left->swap_rows(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (right) right->swap_cols(i, j);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    a.add_row(dst, src, f);
    if (left) left->add_row(dst, src, f);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    a.add_col(dst, src, f);
    if (right) right->add_col(dst, src, f);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      bool found = false;
      std::size_t pi = t, pj = t;
      BigInt best;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j).is_zero()) continue;
          BigInt v = abs(a(i, j));
          if (!found || v < best) {
            best = std::move(v);
            pi = i;
            pj = j;
            found = true;
            if (best == 1) break;
          }
        }
        if (found && best == 1) break;
      }
      if (!found) return;
      row_swap(t, pi);
      col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t).is_zero()) continue;
        const BigInt q = a(i, t) / a(t, t);
        if (!q.is_zero()) row_add(i, t, -q);
        clean = clean && a(i, t).is_zero();
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j).is_zero()) continue;
        const BigInt q = a(t, j) / a(t, t);
        if (!q.is_zero()) col_add(j, t, -q);
        clean = clean && a(t, j).is_zero();
      }
      if (!clean) continue;

      bool divides_all = true;
      for (std::size_t i = t + 1; i < m && divides_all; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!a(i, j).is_zero() && BigInt(a(i, j) % a(t, t)) != 0) {
            row_add(t, i, 1);
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      if (left) left->negate_row(t);
    }
  }
}

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm out{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  detail::smith_reduce(out.diagonal, &out.left, &out.right);
  return out;
}

/// Non-zero invariant factors only; skips the transform bookkeeping.
inline std::vector<BigInt> invariant_factors(IntMatrix a) {
  detail::smith_reduce(a, nullptr, nullptr);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()) && !a(i, i).is_zero(); ++i) out.push_back(a(i, i));
  return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace rfm
