#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "spotcheck/matrix.hpp"

namespace spotcheck {

struct SymEig {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns, orthonormal, matched to values
};

namespace detail {
inline double off_diag_frobenius(const Matrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(s);
}
}  // namespace detail

// Symmetric eigendecomposition by cyclic Jacobi rotations. Sweeps until the
// off-diagonal Frobenius norm drops below 1e-12 or 100 sweeps elapse.
// Eigenvalues are returned in descending order, ties keeping the original
// column order; each eigenvector has its largest-magnitude entry positive.
inline SymEig sym_eig(const Matrix& input, double symmetry_tol = 1e-9) {
  const std::size_t n = input.rows();
  if (n == 0 || input.cols() != n) throw ContractError("sym_eig: matrix not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(input(i, j) - input(j, i)) > symmetry_tol)
        throw ContractError("sym_eig: matrix not symmetric");

  Matrix a = input;
  // Symmetrize roundoff-level asymmetry so the rotations stay exact.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = a(j, i) = m;
    }
  Matrix v = Matrix::identity(n);

  constexpr double kOffTol = 1e-12;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::off_diag_frobenius(a) <= kOffTol) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != p && k != q) {
            const double akp = a(k, p), akq = a(k, q);
            a(k, p) = a(p, k) = akp - s * (akq + tau * akp);
            a(k, q) = a(q, k) = akq + s * (akp - tau * akq);
          }
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp - s * (vkq + tau * vkp);
          v(k, q) = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) > a(j, j);
  });

  SymEig out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.values[col] = a(src, src);
    // Sign convention: largest-magnitude component positive.
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double mag = std::fabs(v(k, src));
      if (mag > best) {
        best = mag;
        arg = k;
      }
    }
    const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = sign * v(k, src);
  }
  return out;
}

}  // namespace spotcheck
