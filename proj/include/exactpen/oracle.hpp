#pragma once

#include "exactpen/common.hpp"
#include "exactpen/sets.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace exactpen {

using ScalarFunction = std::function<double(const Vec&)>;
using VectorFunction = std::function<Vec(const Vec&)>;
using SaddleScalarFunction = std::function<double(const Vec&, const Vec&)>;
using SaddleVectorFunction = std::function<Vec(const Vec&, const Vec&)>;

/// First-order oracle returning subgradients bounded by `lipschitz`.
struct NonsmoothOracle {
  ScalarFunction value;
  VectorFunction subgradient;
  double lipschitz = 1.0;           // L_f
  double strong_convexity = 0.0;    // mu_f; 0 when not strongly convex
  bool lipschitz_estimated = false;
};

/// Gradient oracle for f with M_f-Lipschitz gradient.
struct SmoothOracle {
  ScalarFunction value;
  VectorFunction gradient;
  double gradient_lipschitz = 1.0;  // M_f
  double strong_convexity = 0.0;    // mu_f
  double lipschitz = 1.0;           // L_f over the domain
  bool lipschitz_estimated = false;
  bool gradient_lipschitz_estimated = false;
};

/// f(x) = max_{z in Z} F(x, z) for F convex-concave with Lipschitz gradient.
struct SaddleOracle {
  SaddleScalarFunction value;
  SaddleVectorFunction grad_x;
  SaddleVectorFunction grad_z;
  SimpleSetd z_set = SimpleSetd::simplex(1);
  double gradient_lipschitz = 1.0;  // of (grad_x F, grad_z F) over X x Z
  ScalarFunction primal_value;      // closed-form max over Z, for reporting
  double lipschitz = 1.0;           // L_f of the primal function
};

using Oracle = std::variant<NonsmoothOracle, SmoothOracle, SaddleOracle>;

std::string oracle_kind(const Oracle& oracle);

/// Objective value f(x) regardless of the oracle flavour.
double objective_value(const Oracle& oracle, const Vec& x);

/// L_f regardless of the oracle flavour.
double objective_lipschitz(const Oracle& oracle);

/// mu_f (0 for saddle oracles).
double objective_strong_convexity(const Oracle& oracle);

/// Views a smooth oracle as a subgradient oracle (a gradient is a subgradient).
NonsmoothOracle as_nonsmooth(const SmoothOracle& oracle);

struct OracleReport {
  std::vector<CheckResult> checks;
  bool passed() const { return all_passed(checks); }
};

/// Spot-checks the oracle's declared invariants on random points of `domain`:
/// bounded subgradients, convexity, gradient Lipschitz bound and finite
/// differences as applicable to the oracle kind.
OracleReport validate_oracle(const Oracle& oracle, const SimpleSetd& domain, int samples,
                             std::uint64_t seed = 1);

struct ConstantEstimates {
  double lipschitz = 0;           // 2 * max ||grad||
  double gradient_lipschitz = 0;  // 2 * max ratio over random pairs
};

/// Sampling-based estimates of L_f and M_f (x2 safety factor).
ConstantEstimates estimate_constants(const ScalarFunction& value, const VectorFunction& gradient,
                                     const SimpleSetd& domain, int samples = 500,
                                     std::uint64_t seed = 1);

}  // namespace exactpen
