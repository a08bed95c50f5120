#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flatcover/core/rational.hpp"

namespace flatcover {

using ExactMatrix = std::vector<std::vector<Rational>>;  // row-major

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(ExactMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t exact_rank(ExactMatrix m) { return rref(m).size(); }

/// A nonzero vector spanning the kernel of m when the kernel is
/// one-dimensional; std::nullopt otherwise.
inline std::optional<std::vector<Rational>> kernel_vector(ExactMatrix m) {
  if (m.empty()) return std::nullopt;
  const std::size_t cols = m[0].size();
  auto piv = rref(m);
  if (piv.size() + 1 != cols) return std::nullopt;
  std::size_t free_col = 0;
  for (std::size_t k = 0; k <= piv.size(); ++k) {
    if (k == piv.size() || piv[k] != k) {
      free_col = k;
      break;
    }
  }
  std::vector<Rational> v(cols, Rational(0));
  v[free_col] = 1;
  for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m[k][free_col];
  return v;
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[s], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace flatcover
