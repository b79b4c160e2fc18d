#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spotcheck {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (shape mismatch, gamma <= 0, ...).
struct ContractError : Error {
  using Error::Error;
};

// Input data is valid in form but cannot be processed (all-zero histogram,
// too few rows for a split).
struct DegenerateInputError : Error {
  using Error::Error;
};

// Malformed external input. `position` is a line number for text formats and
// a byte offset for binary ones, -1 when unknown.
struct ParseError : Error {
  explicit ParseError(const std::string& msg, long long position = -1)
      : Error(msg), position(position) {}
  long long position;
};

struct NumericError : Error {
  using Error::Error;
};

// Too few usable eigenvalues to retain the requested latent dimension.
struct RankDeficiencyError : NumericError {
  using NumericError::NumericError;
};

// SPD solve hit a non-positive pivot.
struct SingularSystemError : NumericError {
  using NumericError::NumericError;
};

// Training produced a non-finite loss. Carries the per-epoch
// (train, validation) loss history recorded up to the failure.
struct DivergenceError : NumericError {
  DivergenceError(const std::string& msg,
                  std::vector<std::pair<double, double>> history = {})
      : NumericError(msg), history(std::move(history)) {}
  std::vector<std::pair<double, double>> history;
};

// Metric is undefined for the given inputs (e.g. AUC on a single class).
struct UndefinedMetricError : Error {
  using Error::Error;
};

}  // namespace spotcheck
