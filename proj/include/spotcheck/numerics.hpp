#pragma once

// Umbrella for the deterministic numeric kernel.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "spotcheck/adam.hpp"
#include "spotcheck/eigen.hpp"
#include "spotcheck/kernel.hpp"
#include "spotcheck/matrix.hpp"
#include "spotcheck/prng.hpp"
#include "spotcheck/ridge.hpp"

namespace spotcheck {

// log((1/n) * sum exp(v_i)), max-shifted. Exact on constant input.
inline double log_mean_exp(std::span<const double> values) {
  if (values.empty()) throw ContractError("log_mean_exp: empty input");
  const double m = *std::max_element(values.begin(), values.end());
  if (m == -std::numeric_limits<double>::infinity()) return m;
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s / static_cast<double>(values.size()));
}

}  // namespace spotcheck
