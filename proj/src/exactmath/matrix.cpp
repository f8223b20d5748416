#include "eiscong/exactmath/matrix.hpp"

namespace eiscong::exact {

PolyQ charpoly(const Matrix<Rational>& a) {
  const std::size_t n = a.size();
  for (auto& row : a) require(row.size() == n, "characteristic polynomial needs a square matrix");
  // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix<Rational> m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<Rational> am = mat_mul(a, m, Rational(0));
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = std::move(am);
    Matrix<Rational> prod = mat_mul(a, m, Rational(0));
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += prod[i][i];
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return PolyQ(std::move(c));
}

std::vector<Rational> solve(Matrix<Rational> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  require(b.size() == n, "right-hand side has the wrong length");
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto pivots = row_reduce(a, Rational(0));
  if (pivots.size() != n || (n > 0 && pivots.back() != n - 1)) {
    throw ComputationError("singular linear system");
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace eiscong::exact
