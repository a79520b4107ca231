#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exactpen {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = Vector<double>;
using Mat = Matrix<double>;

/// Below this magnitude a distance or block norm counts as zero (0/0 -> 0).
template <typename Scalar>
constexpr Scalar zero_cutoff() {
  return Scalar(1e-12);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched dimensions, malformed set or norm parameters, bad config keys.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite coordinates, negative inputs where nonnegative ones are required.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The requested quantity has no closed form or needs unavailable constants.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Outcome of one named property check. Failures are data, never exceptions.
struct CheckResult {
  std::string name;
  bool passed = true;
  double worst_margin = 0.0;  // largest observed violation (<= 0 when passing)
  std::string detail;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& x) {
  return x.allFinite();
}

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& x, const char* what) {
  if (!x.allFinite()) {
    throw InputError(std::string(what) + ": non-finite coordinate");
  }
}

inline void require_dim(Index got, Index expected, const char* what) {
  if (got != expected) {
    throw ConfigError(std::string(what) + ": dimension " + std::to_string(got) +
                      " does not match expected " + std::to_string(expected));
  }
}

}  // namespace exactpen
