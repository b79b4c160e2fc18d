#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "spotcheck/error.hpp"

namespace spotcheck {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction over a flat parameter vector.
class AdamState {
 public:
  AdamState(std::size_t param_count, AdamConfig cfg = {})
      : cfg_(cfg), m_(param_count, 0.0), v_(param_count, 0.0) {}

  void step(std::span<double> params, std::span<const double> grads) {
    if (params.size() != m_.size() || grads.size() != m_.size())
      throw ContractError("AdamState::step: shape mismatch");
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double g = grads[i];
      m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * g;
      v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * g * g;
      const double m_hat = m_[i] / bc1;
      const double v_hat = v_[i] / bc2;
      params[i] -= cfg_.lr * m_hat / (std::sqrt(v_hat) + cfg_.eps);
    }
  }

  std::uint64_t step_count() const { return t_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  std::uint64_t t_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace spotcheck
