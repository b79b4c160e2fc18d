#pragma once

#include <cmath>

#include "spotcheck/matrix.hpp"

namespace spotcheck {

namespace detail {

// In-place lower Cholesky factor of an SPD matrix. Throws on a non-positive
// pivot instead of guessing.
inline Matrix cholesky(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0.0)
          throw SingularSystemError("cholesky: non-positive pivot at row " +
                                    std::to_string(i));
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

}  // namespace detail

// Solves (G + lambda*I) A = B for symmetric positive-definite G + lambda*I.
inline Matrix ridge_solve(const Matrix& g, const Matrix& b, double lambda) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw ContractError("ridge_solve: G not square");
  if (b.rows() != n) throw ContractError("ridge_solve: B row count mismatch");
  if (lambda < 0.0) throw ContractError("ridge_solve: lambda must be >= 0");

  Matrix reg = g;
  for (std::size_t i = 0; i < n; ++i) reg(i, i) += lambda;
  const Matrix l = detail::cholesky(reg);

  // Forward then back substitution, one B column at a time.
  Matrix a(n, b.cols());
  std::vector<double> y(n);
  for (std::size_t col = 0; col < b.cols(); ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = b(i, col);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
      y[i] = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * a(k, col);
      a(ii, col) = s / l(ii, ii);
    }
  }
  return a;
}

}  // namespace spotcheck
