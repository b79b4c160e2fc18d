#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "spotcheck/matrix.hpp"

namespace spotcheck {

inline double squared_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw ContractError("squared_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

// k(x, y) = exp(-gamma * ||x - y||^2), in (0, 1].
inline double rbf_kernel(std::span<const double> x, std::span<const double> y,
                         double gamma) {
  if (!(gamma > 0.0)) throw ContractError("rbf_kernel: gamma must be > 0");
  return std::exp(-gamma * squared_distance(x, y));
}

// Symmetric Gram matrix over the rows of X.
inline Matrix rbf_gram(const Matrix& x, double gamma) {
  if (!(gamma > 0.0)) throw ContractError("rbf_gram: gamma must be > 0");
  const std::size_t m = x.rows();
  Matrix k(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    k(i, i) = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = std::exp(-gamma * squared_distance(x.row(i), x.row(j)));
      k(i, j) = k(j, i) = v;
    }
  }
  return k;
}

// Kernel values of one point against every row of X.
inline std::vector<double> rbf_against_rows(const Matrix& x, std::span<const double> p,
                                            double gamma) {
  if (!(gamma > 0.0)) throw ContractError("rbf_against_rows: gamma must be > 0");
  std::vector<double> k(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    k[i] = std::exp(-gamma * squared_distance(x.row(i), p));
  return k;
}

}  // namespace spotcheck
