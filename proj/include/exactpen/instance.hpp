#pragma once

#include "exactpen/oracle.hpp"
#include "exactpen/penalty.hpp"

#include <optional>
#include <string>

namespace exactpen {

/// min f(x) over X and C_1 .. C_m, bundled with the constants the solvers need.
struct ProblemInstance {
  std::string name;
  std::string fingerprint;  // canonical text of the generating parameters
  SimpleSetd domain;
  PenaltyModeld penalty;
  PenaltyConfig cfg;
  Oracle oracle;
  Vec initial_point;
  std::optional<double> objective_floor;  // f^lambda below this means divergence
  std::optional<Vec> anchor;              // certified member of the intersection
  std::optional<Vec> known_minimizer;
  std::optional<double> known_optimum;

  ProblemInstance(std::string name_, SimpleSetd domain_, PenaltyModeld penalty_,
                  PenaltyConfig cfg_, Oracle oracle_, Vec initial_point_)
      : name(std::move(name_)),
        domain(std::move(domain_)),
        penalty(std::move(penalty_)),
        cfg(cfg_),
        oracle(std::move(oracle_)),
        initial_point(std::move(initial_point_)) {
    require_dim(domain.dim(), penalty.dim(), "problem instance domain");
    require_dim(initial_point.size(), domain.dim(), "problem instance initial point");
    if (!domain.is_bounded()) throw ConfigError("problem instance: domain X must be bounded");
  }

  double diameter() const { return *domain.diameter(); }
  double lambda() const { return cfg.lambda; }
  Index dim() const { return domain.dim(); }
  Index m() const { return penalty.m(); }

  double objective(const Vec& x) const { return objective_value(oracle, x); }
  double penalty_value(const Vec& x) const { return eval_hP(penalty, x); }

  /// f^lambda(x) = f(x) + lambda h_P(x)
  double penalized(const Vec& x) const { return objective(x) + cfg.lambda * penalty_value(x); }

  ProblemInstance with_lambda(double lambda) const {
    if (!(lambda > 0)) throw ConfigError("problem instance: lambda must be positive");
    ProblemInstance copy = *this;
    copy.cfg.lambda = lambda;
    return copy;
  }
};

}  // namespace exactpen
