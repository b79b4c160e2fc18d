#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "spotcheck/error.hpp"

namespace spotcheck {

// SplitMix64. Integer-only state transitions, so the stream for a given seed
// is bit-identical across platforms. Single-owner mutable stream: do not
// share one instance between threads.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit mantissa.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe under log().
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform index in [0, bound). 128-bit multiply keeps this branch-free and
  // platform-stable.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Standard normal via Box-Muller, cosine branch. Consumes exactly two
  // uniforms per draw.
  double gaussian() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw ContractError("Prng::gamma: shape must be > 0");
    if (shape < 1.0) {
      const double boost = std::pow(uniform_pos(), 1.0 / shape);
      return gamma(shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = gaussian();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// z_i = mu_i + sqrt(var_i) * eps_i with eps ~ N(0, I). var == 0 returns mu
// exactly.
inline std::vector<double> gaussian_sample(Prng& prng, std::span<const double> mu,
                                           std::span<const double> var) {
  if (mu.size() != var.size())
    throw ContractError("gaussian_sample: mu/var size mismatch");
  std::vector<double> z(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (var[i] < 0.0) throw ContractError("gaussian_sample: negative variance");
    const double eps = prng.gaussian();
    z[i] = var[i] == 0.0 ? mu[i] : mu[i] + std::sqrt(var[i]) * eps;
  }
  return z;
}

// Deterministic Fisher-Yates.
template <typename T>
void shuffle(Prng& prng, std::vector<T>& items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(prng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace spotcheck
