#pragma once

#include "exactpen/norms.hpp"
#include "exactpen/sets.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exactpen {

/// The penalty h_P(x) = P(d_1(x), ..., d_m(x)) over constraint sets C_1..C_m.
template <typename Scalar>
struct PenaltyModel {
  AbsoluteNorm<Scalar> norm;
  std::vector<SimpleSet<Scalar>> sets;

  PenaltyModel(AbsoluteNorm<Scalar> n, std::vector<SimpleSet<Scalar>> s)
      : norm(std::move(n)), sets(std::move(s)) {
    if (sets.empty()) throw ConfigError("penalty model: at least one constraint set required");
    for (const auto& set : sets) require_dim(set.dim(), sets.front().dim(), "penalty model set");
    norm.check_dim(static_cast<Index>(sets.size()), "penalty model norm");
  }

  Index m() const { return static_cast<Index>(sets.size()); }
  Index dim() const { return sets.front().dim(); }
};

using PenaltyModeld = PenaltyModel<double>;

/// Everything one pass over the constraint projections yields at a point.
template <typename Scalar>
struct PenaltyEvaluation {
  Scalar value = 0;
  Vector<Scalar> distances;
  Vector<Scalar> subgradient;
};

template <typename Scalar, typename Derived>
PenaltyEvaluation<Scalar> evaluate_penalty(const PenaltyModel<Scalar>& model,
                                           const Eigen::MatrixBase<Derived>& x) {
  require_dim(x.size(), model.dim(), "penalty evaluation");
  const Index m = model.m();
  const Vector<Scalar> point = x;
  PenaltyEvaluation<Scalar> out;
  out.distances.resize(m);
  std::vector<Vector<Scalar>> gaps;
  gaps.reserve(m);
  for (Index i = 0; i < m; ++i) {
    gaps.push_back(point - model.sets[i].project(point));
    out.distances(i) = gaps.back().norm();
  }
  out.value = model.norm.eval(out.distances);
  const Vector<Scalar> weights = model.norm.linear_maximizer(out.distances);
  out.subgradient = Vector<Scalar>::Zero(point.size());
  for (Index i = 0; i < m; ++i) {
    if (out.distances(i) > zero_cutoff<Scalar>() && weights(i) != 0) {
      out.subgradient += (weights(i) / out.distances(i)) * gaps[i];
    }
  }
  return out;
}

template <typename Scalar, typename Derived>
Scalar eval_hP(const PenaltyModel<Scalar>& model, const Eigen::MatrixBase<Derived>& x) {
  require_dim(x.size(), model.dim(), "eval_hP");
  const Vector<Scalar> point = x;
  Vector<Scalar> d(model.m());
  for (Index i = 0; i < model.m(); ++i) d(i) = distance(model.sets[i], point);
  return model.norm.eval(d);
}

template <typename Scalar, typename Derived>
Vector<Scalar> subgrad_hP(const PenaltyModel<Scalar>& model, const Eigen::MatrixBase<Derived>& x) {
  return evaluate_penalty(model, x).subgradient;
}

/// Penalty weight and the constants that decide whether it is exact.
struct PenaltyConfig {
  double lambda = 1.0;
  double lipschitz = 1.0;  // L_f
  bool lipschitz_estimated = false;
  std::optional<double> upsilon;    // linear regularity constant of the set family
  std::optional<double> upsilon_P;  // upsilon * dual_ball_shape_factor

  bool operator==(const PenaltyConfig&) const = default;
};

/// Builds a config, deriving upsilon_P from upsilon and the norm when known.
template <typename Scalar>
PenaltyConfig make_penalty_config(const AbsoluteNorm<Scalar>& norm, Index m, double lambda,
                                  double lipschitz, std::optional<double> upsilon,
                                  bool lipschitz_estimated = false) {
  if (!(lambda > 0)) throw ConfigError("penalty: lambda must be positive");
  if (!(lipschitz > 0)) throw ConfigError("penalty: L_f must be positive");
  PenaltyConfig cfg;
  cfg.lambda = lambda;
  cfg.lipschitz = lipschitz;
  cfg.lipschitz_estimated = lipschitz_estimated;
  if (upsilon) {
    if (!(*upsilon > 0)) throw ConfigError("penalty: upsilon must be positive");
    cfg.upsilon = upsilon;
    cfg.upsilon_P = *upsilon * static_cast<double>(norm.dual_ball_shape_factor(m));
  }
  return cfg;
}

/// 2 * upsilon_P * L_f, the smallest weight with a feasibility guarantee.
inline double min_valid_lambda(const PenaltyConfig& cfg) {
  if (!cfg.upsilon_P) {
    throw CapabilityError(
        "min_valid_lambda: regularity constant unknown; use doubling_solve to escalate lambda");
  }
  return 2.0 * *cfg.upsilon_P * cfg.lipschitz;
}

/// Regularity constant R/r for an intersection sandwiched between balls of
/// radii r (inside) and R (outside).
inline double ball_sandwich_upsilon(double outer_radius, double inner_radius) {
  if (!(inner_radius > 0) || outer_radius < inner_radius) {
    throw ConfigError("ball_sandwich_upsilon: need R >= r > 0");
  }
  return outer_radius / inner_radius;
}

struct FeasibilityCertificate {
  double h_p = 0;
  std::optional<double> distance_bound;  // upsilon_P * h_P(x) >= d_C(x)
  double threshold = 0;                  // epsilon / L_f
  bool passed = false;
};

template <typename Scalar, typename Derived>
FeasibilityCertificate feasibility_certificate(const PenaltyModel<Scalar>& model,
                                               const PenaltyConfig& cfg,
                                               const Eigen::MatrixBase<Derived>& x,
                                               double epsilon) {
  if (!(epsilon > 0)) throw InputError("feasibility_certificate: epsilon must be positive");
  FeasibilityCertificate out;
  out.h_p = static_cast<double>(eval_hP(model, x));
  out.threshold = epsilon / cfg.lipschitz;
  if (cfg.upsilon_P) {
    out.distance_bound = *cfg.upsilon_P * out.h_p;
    out.passed = *out.distance_bound <= out.threshold * (1.0 + 1e-12);
  }
  return out;
}

}  // namespace exactpen
