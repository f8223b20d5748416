#pragma once

// Dense exact linear algebra over a field type T with value semantics and
// the usual arithmetic operators (Rational, NFElement, FFElement). Routines
// that need constants take them as arguments so contextful types work.

#include <cstddef>
#include <utility>
#include <vector>

#include "eiscong/error.hpp"
#include "eiscong/exactmath/poly.hpp"

namespace eiscong::exact {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline Rational field_inverse(const Rational& x) {
  if (x == 0) throw ComputationError("division by zero");
  return Rational(1) / x;
}

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  Matrix<T> c(n, std::vector<T>(m, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == zero) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = c[i][j] + a[i][k] * b[k][j];
    }
  return c;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  if (a.empty()) return {};
  Matrix<T> t(a[0].size(), std::vector<T>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& a, const T& zero) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == zero) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    const T inv = field_inverse(a[r][c]);
    for (auto& x : a[r]) x = x * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == zero) continue;
      const T factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - factor * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of {v : a v = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a, std::size_t cols, const T& zero, const T& one) {
  auto pivots = row_reduce(a, zero);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, zero);
    v[free] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = zero - a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
T determinant(Matrix<T> a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  T det = one;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == zero) ++piv;
    if (piv == n) return zero;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = zero - det;
    }
    det = det * a[c][c];
    const T inv = field_inverse(a[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == zero) continue;
      const T factor = a[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] - factor * a[c][j];
    }
  }
  return det;
}

/// Characteristic polynomial det(xI - a) of a square rational matrix
/// (Faddeev-LeVerrier).
PolyQ charpoly(const Matrix<Rational>& a);

/// Solve a x = b for square invertible a over Q.
std::vector<Rational> solve(Matrix<Rational> a, std::vector<Rational> b);

}  // namespace eiscong::exact
