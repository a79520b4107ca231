#include "exactpen/solvers.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace exactpen {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

void check_lambda(const ProblemInstance& instance, const SolverParams& params,
                  const std::string& algorithm) {
  if (!(instance.cfg.lambda > 0)) throw ConfigError(algorithm + ": lambda must be positive");
  if (params.iterations < 1) throw ConfigError(algorithm + ": iterations must be >= 1");
  if (!params.enforce_lambda_threshold || !instance.cfg.upsilon_P) return;
  const double needed = min_valid_lambda(instance.cfg);
  if (instance.cfg.lambda < needed) {
    throw ConfigError(algorithm + ": lambda " + num(instance.cfg.lambda) +
                      " is below 2*upsilon_P*L_f = " + num(needed) +
                      "; the penalty is not exact. Raise lambda, disable "
                      "enforce_lambda_threshold, or use doubling_solve");
  }
}

void require_positive(const std::optional<double>& v, const char* what) {
  if (v && !(*v > 0)) throw ConfigError(std::string(what) + " must be positive");
}

/// Shared bookkeeping: trace records, divergence guard, residual tracking.
class Monitor {
 public:
  Monitor(const ProblemInstance& instance, const SolverParams& params, std::string algorithm)
      : instance_(instance), params_(params), start_(Clock::now()) {
    trace_.algorithm = std::move(algorithm);
    trace_.lambda = instance.cfg.lambda;
    trace_.seed = params.seed;
    floor_ = params.divergence_floor ? params.divergence_floor : instance.objective_floor;
    radius_ = params.divergence_radius_factor * instance.diameter();
    if (params.record_trace) trace_.records.reserve(static_cast<std::size_t>(params.iterations));
  }

  void parameter(const std::string& key, double value) {
    trace_.parameters.emplace_back(key, value);
  }

  /// Records iterate t; false once the iterate trips the divergence guard.
  bool observe(long t, const Vec& x, double f, double h_p) {
    const double lambda = instance_.cfg.lambda;
    const double value = f + lambda * h_p;
    trace_.iterations_run = t;
    trace_.max_primal_residual = std::max(trace_.max_primal_residual, instance_.domain.residual(x));
    if (params_.record_trace) {
      trace_.records.push_back({t, f, h_p, lambda * h_p, elapsed()});
    }
    if (!std::isfinite(value)) return diverge("non-finite objective at t=" + std::to_string(t));
    if (trace_.best_point.size() == 0 || value < trace_.best_value) {
      trace_.best_value = value;
      trace_.best_point = x;
    }
    if (floor_ && value < *floor_) {
      return diverge("f^lambda = " + num(value) + " fell below the floor " + num(*floor_) +
                     " at t=" + std::to_string(t) + "; the penalized problem looks unbounded");
    }
    return true;
  }

  /// Guard on the point about to be projected.
  bool check_step(long t, const Vec& unprojected) {
    if (!unprojected.allFinite()) return diverge("non-finite step at t=" + std::to_string(t));
    const double norm = unprojected.norm();
    if (norm > radius_) {
      return diverge("step norm " + num(norm) + " exceeds " + num(radius_) + " at t=" +
                     std::to_string(t));
    }
    return true;
  }

  void dual(const DualBlockd& Y) {
    trace_.max_dual_infeasibility =
        std::max(trace_.max_dual_infeasibility,
                 dual_infeasibility(instance_.penalty.norm, instance_.cfg.lambda, Y));
  }

  bool diverged() const { return trace_.status == RunStatus::Diverged; }

  RunTrace finish(Vec x_hat, Vec last) {
    trace_.x_hat = std::move(x_hat);
    trace_.last_iterate = std::move(last);
    trace_.elapsed_ms = elapsed();
    return std::move(trace_);
  }

  RunTrace& trace() { return trace_; }

 private:
  bool diverge(std::string why) {
    trace_.status = RunStatus::Diverged;
    trace_.diagnostic = std::move(why);
    return false;
  }

  double elapsed() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

  const ProblemInstance& instance_;
  const SolverParams& params_;
  Clock::time_point start_;
  RunTrace trace_;
  std::optional<double> floor_;
  double radius_ = 0;
};

/// Uniform running mean of vectors or dual blocks.
template <typename T>
struct RunningMean {
  T sum;
  long count = 0;
  void add(const T& v) {
    if (count == 0) {
      sum = v;
    } else {
      sum += v;
    }
    ++count;
  }
  T mean() const { return sum / static_cast<double>(count); }
};

NonsmoothOracle subgradient_view(const ProblemInstance& instance) {
  if (const auto* o = std::get_if<NonsmoothOracle>(&instance.oracle)) return *o;
  if (const auto* o = std::get_if<SmoothOracle>(&instance.oracle)) return as_nonsmooth(*o);
  throw ConfigError("sps: needs a subgradient or gradient oracle, got " +
                    oracle_kind(instance.oracle));
}

const SmoothOracle& smooth_view(const ProblemInstance& instance, const std::string& algorithm) {
  if (const auto* o = std::get_if<SmoothOracle>(&instance.oracle)) return *o;
  throw ConfigError(algorithm + ": needs a smooth (gradient) oracle, got " +
                    oracle_kind(instance.oracle));
}

/// Largest sum_i ||y_i||^2 over blocks with P*(||y_1||, .., ||y_m||) <= 1.
double dual_block_square_bound(const AbsoluteNormd& norm, Index m) {
  switch (norm.kind()) {
    case NormKind::L1: return static_cast<double>(m);
    case NormKind::L2:
    case NormKind::Linf: return 1.0;
    case NormKind::WeightedL1: return norm.weights().squaredNorm();
  }
  return static_cast<double>(m);
}

}  // namespace

std::string to_string(SpsSchedule schedule) {
  switch (schedule) {
    case SpsSchedule::Auto: return "auto";
    case SpsSchedule::Convex: return "convex";
    case SpsSchedule::StronglyConvex: return "strongly_convex";
  }
  return "?";
}

SpsSchedule sps_schedule_from_string(const std::string& tag) {
  for (SpsSchedule s : {SpsSchedule::Auto, SpsSchedule::Convex, SpsSchedule::StronglyConvex}) {
    if (to_string(s) == tag) return s;
  }
  throw ConfigError("unknown SPS schedule '" + tag + "'");
}

std::string to_string(RunStatus status) {
  return status == RunStatus::Completed ? "completed" : "diverged";
}

std::optional<double> RunTrace::parameter(const std::string& key) const {
  for (const auto& [k, v] : parameters) {
    if (k == key) return v;
  }
  return std::nullopt;
}

Vec weighted_average(const std::vector<Vec>& points, const std::vector<double>& gammas) {
  if (points.empty()) throw InputError("weighted_average: no points");
  if (points.size() != gammas.size()) throw InputError("weighted_average: length mismatch");
  Vec sum = Vec::Zero(points.front().size());
  double weight = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(gammas[i] > 0)) throw InputError("weighted_average: step sizes must be positive");
    require_dim(points[i].size(), sum.size(), "weighted_average");
    sum += points[i] / gammas[i];
    weight += 1.0 / gammas[i];
  }
  return sum / weight;
}

RunTrace sps(const ProblemInstance& instance, const SolverParams& params) {
  check_lambda(instance, params, "sps");
  require_positive(params.eta, "sps: eta");
  require_positive(params.distance_bound, "sps: distance_bound");
  const NonsmoothOracle oracle = subgradient_view(instance);
  const double lambda = instance.cfg.lambda;
  const double mu = oracle.strong_convexity;
  SpsSchedule schedule = params.sps_schedule;
  if (schedule == SpsSchedule::Auto) {
    schedule = mu > 0 ? SpsSchedule::StronglyConvex : SpsSchedule::Convex;
  }
  if (schedule == SpsSchedule::StronglyConvex && !(mu > 0)) {
    throw ConfigError("sps: strongly convex schedule needs mu_f > 0");
  }
  const double p_ones = instance.penalty.norm.norm_of_ones(instance.m());
  const double radius = params.distance_bound.value_or(instance.diameter());
  const double eta = params.eta.value_or(radius / (instance.cfg.lipschitz + lambda * p_ones));

  Monitor monitor(instance, params,
                  schedule == SpsSchedule::Convex ? "sps_convex" : "sps_strongly_convex");
  monitor.parameter("lambda", lambda);
  monitor.parameter("P(1)", p_ones);
  if (schedule == SpsSchedule::Convex) {
    monitor.parameter("eta", eta);
  } else {
    monitor.parameter("mu_f", mu);
  }

  Vec x = instance.domain.project(instance.initial_point);
  Vec weighted = Vec::Zero(x.size());
  double weight = 0;
  Vec last = x;
  for (long t = 1; t <= params.iterations; ++t) {
    const double f = oracle.value(x);
    const auto pen = evaluate_penalty(instance.penalty, x);
    last = x;
    const double step = schedule == SpsSchedule::Convex
                            ? eta / std::sqrt(static_cast<double>(t))
                            : 2.0 / (mu * static_cast<double>(t + 1));
    weighted += x / step;
    weight += 1.0 / step;
    if (!monitor.observe(t, x, f, pen.value)) break;
    const Vec unprojected = x - step * (oracle.subgradient(x) + lambda * pen.subgradient);
    if (!monitor.check_step(t, unprojected)) break;
    x = instance.domain.project(unprojected);
  }
  return monitor.finish(weighted / weight, last);
}

RunTrace eppd(const ProblemInstance& instance, const SolverParams& params) {
  check_lambda(instance, params, "eppd");
  require_positive(params.tau, "eppd: tau");
  require_positive(params.gamma, "eppd: gamma");
  const SmoothOracle& oracle = smooth_view(instance, "eppd");
  const double lambda = instance.cfg.lambda;
  const Index m = instance.m();
  const double gamma = params.gamma.value_or(lambda / instance.diameter());
  const double tau =
      params.tau.value_or(1.0 / (oracle.gradient_lipschitz + static_cast<double>(m) * gamma));

  Monitor monitor(instance, params, "eppd");
  monitor.parameter("lambda", lambda);
  monitor.parameter("gamma", gamma);
  monitor.parameter("tau", tau);

  Vec x = instance.domain.project(instance.initial_point);
  DualBlockd Y = DualBlockd::Zero(x.size(), m);
  RunningMean<Vec> x_mean;
  RunningMean<DualBlockd> y_mean;
  for (long t = 0; t < params.iterations; ++t) {
    const Vec unprojected = x - tau * (oracle.gradient(x) + block_sum(Y));
    if (!monitor.check_step(t + 1, unprojected)) break;
    const Vec next = instance.domain.project(unprojected);
    Y = prox_g(instance.penalty, lambda, gamma,
               DualBlockd(Y + gamma * replicate(Vec(2.0 * next - x), m)));
    x = next;
    monitor.dual(Y);
    x_mean.add(x);
    y_mean.add(Y);
    if (!monitor.observe(t + 1, x, oracle.value(x), eval_hP(instance.penalty, x))) break;
  }
  if (x_mean.count == 0) x_mean.add(x);
  if (y_mean.count > 0) monitor.trace().y_hat = y_mean.mean();
  monitor.trace().y_last = Y;
  return monitor.finish(x_mean.mean(), x);
}

EpapdSchedule epapd_schedule(double gradient_lipschitz, double mu, Index m, long steps) {
  if (!(gradient_lipschitz > 0)) throw ConfigError("epapd: M_f must be positive");
  if (!(mu > 0)) throw ConfigError("epapd: mu_f must be positive; use eppd for mu_f = 0");
  if (m < 1) throw ConfigError("epapd: m must be >= 1");
  EpapdSchedule s;
  const auto n = static_cast<std::size_t>(steps) + 1;
  s.theta.reserve(n);
  s.tau.reserve(n);
  s.gamma.reserve(n);
  s.theta.push_back(1.0);
  s.tau.push_back(1.0 / (2.0 * gradient_lipschitz));
  s.gamma.push_back(gradient_lipschitz / static_cast<double>(m));
  for (long t = 0; t < steps; ++t) {
    const double theta = 1.0 / std::sqrt(1.0 + mu * s.tau.back());
    s.theta.push_back(theta);
    s.tau.push_back(theta * s.tau.back());
    s.gamma.push_back(s.gamma.back() / theta);
  }
  return s;
}

RunTrace epapd(const ProblemInstance& instance, const SolverParams& params) {
  check_lambda(instance, params, "epapd");
  const SmoothOracle& oracle = smooth_view(instance, "epapd");
  const double lambda = instance.cfg.lambda;
  const Index m = instance.m();
  const double mu = oracle.strong_convexity;
  if (!(mu > 0)) throw ConfigError("epapd: mu_f must be positive; use eppd for mu_f = 0");

  Monitor monitor(instance, params, "epapd");
  monitor.parameter("lambda", lambda);
  monitor.parameter("mu_f", mu);
  monitor.parameter("theta_0", 1.0);
  monitor.parameter("tau_0", 1.0 / (2.0 * oracle.gradient_lipschitz));
  monitor.parameter("gamma_0", oracle.gradient_lipschitz / static_cast<double>(m));

  double theta = 1.0;
  double tau = 1.0 / (2.0 * oracle.gradient_lipschitz);
  double gamma = oracle.gradient_lipschitz / static_cast<double>(m);
  Vec x = instance.domain.project(instance.initial_point);
  Vec previous = x;
  DualBlockd Y = DualBlockd::Zero(x.size(), m);
  RunningMean<Vec> x_mean;
  RunningMean<DualBlockd> y_mean;
  for (long t = 0; t < params.iterations; ++t) {
    const Vec extrapolated = x + theta * (x - previous);
    Y = prox_g(instance.penalty, lambda, gamma, DualBlockd(Y + gamma * replicate(extrapolated, m)));
    const Vec unprojected = x - tau * (oracle.gradient(x) + block_sum(Y));
    if (!monitor.check_step(t + 1, unprojected)) break;
    previous = x;
    x = instance.domain.project(unprojected);
    monitor.dual(Y);
    x_mean.add(x);
    y_mean.add(Y);
    const double next_theta = 1.0 / std::sqrt(1.0 + mu * tau);
    tau = next_theta * tau;
    gamma = gamma / next_theta;
    theta = next_theta;
    if (!monitor.observe(t + 1, x, oracle.value(x), eval_hP(instance.penalty, x))) break;
  }
  monitor.parameter("tau_final", tau);
  monitor.parameter("gamma_final", gamma);
  if (x_mean.count == 0) x_mean.add(x);
  if (y_mean.count > 0) monitor.trace().y_hat = y_mean.mean();
  monitor.trace().y_last = Y;
  return monitor.finish(x_mean.mean(), x);
}

RunTrace smp(const ProblemInstance& instance, const SolverParams& params) {
  check_lambda(instance, params, "smp");
  require_positive(params.gamma_x, "smp: gamma_x");
  require_positive(params.gamma_y, "smp: gamma_y");
  require_positive(params.gamma_z, "smp: gamma_z");
  const auto* saddle = std::get_if<SaddleOracle>(&instance.oracle);
  if (!saddle) {
    throw ConfigError("smp: needs a saddle oracle, got " + oracle_kind(instance.oracle));
  }
  if (!saddle->z_set.is_bounded()) throw ConfigError("smp: Z must be bounded");
  const double lambda = instance.cfg.lambda;
  const Index m = instance.m();
  const double l_op = saddle->gradient_lipschitz + std::sqrt(static_cast<double>(m));
  const double step = 1.0 / (std::sqrt(2.0) * l_op);
  const double gx = params.gamma_x.value_or(step);
  const double gy = params.gamma_y.value_or(step);
  const double gz = params.gamma_z.value_or(step);

  Monitor monitor(instance, params, "smp");
  monitor.parameter("lambda", lambda);
  monitor.parameter("L_op", l_op);
  monitor.parameter("gamma_x", gx);
  monitor.parameter("gamma_y", gy);
  monitor.parameter("gamma_z", gz);

  Vec x = instance.domain.project(instance.initial_point);
  Vec z = saddle->z_set.project(Vec::Zero(saddle->z_set.dim()));
  DualBlockd Y = DualBlockd::Zero(x.size(), m);
  RunningMean<Vec> x_mean;
  RunningMean<Vec> z_mean;
  RunningMean<DualBlockd> y_mean;
  Vec x_lead = x;
  for (long t = 1; t <= params.iterations; ++t) {
    const Vec u_lead = x - gx * (saddle->grad_x(x, z) + block_sum(Y));
    if (!monitor.check_step(t, u_lead)) break;
    x_lead = instance.domain.project(u_lead);
    const Vec z_lead = saddle->z_set.project(Vec(z + gz * saddle->grad_z(x, z)));
    const auto lead = prox_g_with_points(instance.penalty, lambda, gy,
                                         DualBlockd(Y + gy * replicate(x, m)));
    const DualBlockd& Y_lead = lead.blocks;
    const DualBlockd& g_prime = lead.projections;

    const Vec u = x - gx * (saddle->grad_x(x_lead, z_lead) + block_sum(Y_lead));
    if (!monitor.check_step(t, u)) break;
    x = instance.domain.project(u);
    z = saddle->z_set.project(Vec(z + gz * saddle->grad_z(x_lead, z_lead)));
    Y = project_Y(instance.penalty.norm, lambda,
                  DualBlockd(Y + gy * (replicate(x_lead, m) - g_prime)));

    monitor.dual(Y_lead);
    monitor.dual(Y);
    x_mean.add(x_lead);
    z_mean.add(z_lead);
    y_mean.add(Y_lead);
    if (!monitor.observe(t, x_lead, saddle->primal_value(x_lead),
                         eval_hP(instance.penalty, x_lead))) {
      break;
    }
  }
  if (x_mean.count == 0) x_mean.add(x);
  if (z_mean.count > 0) monitor.trace().z_hat = z_mean.mean();
  if (y_mean.count > 0) monitor.trace().y_hat = y_mean.mean();
  monitor.trace().y_last = Y;
  return monitor.finish(x_mean.mean(), x_lead);
}

std::string to_string(BaseSolver solver) {
  switch (solver) {
    case BaseSolver::Sps: return "sps";
    case BaseSolver::Eppd: return "eppd";
    case BaseSolver::Epapd: return "epapd";
    case BaseSolver::Smp: return "smp";
  }
  return "?";
}

BaseSolver base_solver_from_string(const std::string& tag) {
  for (BaseSolver s : {BaseSolver::Sps, BaseSolver::Eppd, BaseSolver::Epapd, BaseSolver::Smp}) {
    if (to_string(s) == tag) return s;
  }
  throw ConfigError("unknown solver '" + tag + "'");
}

RunTrace run_solver(BaseSolver solver, const ProblemInstance& instance, const SolverParams& params) {
  switch (solver) {
    case BaseSolver::Sps: return sps(instance, params);
    case BaseSolver::Eppd: return eppd(instance, params);
    case BaseSolver::Epapd: return epapd(instance, params);
    case BaseSolver::Smp: return smp(instance, params);
  }
  throw ConfigError("unknown solver");
}

long BudgetRule::budget(double lambda, double epsilon) const {
  const double t = std::ceil(C * std::pow(lambda, a) / std::pow(epsilon, b));
  if (!(t < 9e18)) throw CapabilityError("doubling: iteration budget overflows");
  return std::max(1L, static_cast<long>(t));
}

BudgetRule doubling_budget_rule(BaseSolver solver, const ProblemInstance& instance,
                                SpsSchedule schedule, double lambda0) {
  if (!(lambda0 > 0)) throw ConfigError("doubling: lambda0 must be positive");
  const double D = instance.diameter();
  const double L = instance.cfg.lipschitz;
  const Index m = instance.m();
  const double p_ones = instance.penalty.norm.norm_of_ones(m);
  switch (solver) {
    case BaseSolver::Sps: {
      const double mu = objective_strong_convexity(instance.oracle);
      if (schedule == SpsSchedule::Auto) {
        schedule = mu > 0 ? SpsSchedule::StronglyConvex : SpsSchedule::Convex;
      }
      // L_f + lambda P(1) <= lambda (L_f / lambda0 + P(1)) for lambda >= lambda0.
      const double slope = L / lambda0 + p_ones;
      if (schedule == SpsSchedule::Convex) {
        const double c = 1.5 * D * slope;
        return {c * c, 2.0, 2.0};
      }
      if (!(mu > 0)) throw ConfigError("doubling: strongly convex schedule needs mu_f > 0");
      return {2.0 * slope * slope / mu, 2.0, 1.0};
    }
    case BaseSolver::Eppd: {
      const double M = smooth_view(instance, "doubling eppd").gradient_lipschitz;
      const double S = dual_block_square_bound(instance.penalty.norm, m);
      return {0.5 * D * (static_cast<double>(m) + S) + 0.5 * D * D * M / lambda0, 1.0, 1.0};
    }
    case BaseSolver::Epapd:
    case BaseSolver::Smp:
      break;
  }
  throw CapabilityError("doubling: no iteration budget rule for " + to_string(solver) +
                        "; use sps or eppd as the base solver");
}

DoublingResult doubling_solve(const ProblemInstance& instance, BaseSolver solver,
                              const DoublingOptions& options) {
  if (!(options.epsilon > 0)) throw ConfigError("doubling: epsilon must be positive");
  if (options.max_rounds < 0) throw ConfigError("doubling: max_rounds must be >= 0");
  const BudgetRule rule =
      doubling_budget_rule(solver, instance, options.base.sps_schedule, options.lambda0);
  DoublingResult result;
  for (int k = 0; k <= options.max_rounds; ++k) {
    const double lambda = options.lambda0 * std::ldexp(1.0, k);
    const long budget = rule.budget(lambda, options.epsilon);
    if (options.max_round_budget && budget > *options.max_round_budget) {
      throw DoublingFailure("doubling: round " + std::to_string(k) + " budget " +
                                std::to_string(budget) + " exceeds the cap",
                            result.rounds);
    }
    const ProblemInstance round_instance = instance.with_lambda(lambda);
    SolverParams params = options.base;
    params.iterations = budget;
    params.enforce_lambda_threshold = false;
    RunTrace trace = run_solver(solver, round_instance, params);
    result.total_iterations += trace.iterations_run;

    DoublingRound round;
    round.round = k;
    round.lambda = lambda;
    round.iterations = trace.iterations_run;
    round.h_p = eval_hP(instance.penalty, trace.x_hat);
    if (trace.status == RunStatus::Completed) {
      round.passed = options.test ? (*options.test)(trace.x_hat, lambda)
                                  : round.h_p <= options.epsilon / lambda;
    }
    result.rounds.push_back(round);
    if (round.passed) {
      result.trace = std::move(trace);
      result.final_lambda = lambda;
      result.doublings = k;
      result.final_budget = budget;
      return result;
    }
  }
  throw DoublingFailure("doubling: no round passed the feasibility test within " +
                            std::to_string(options.max_rounds) + " doublings",
                        result.rounds);
}

}  // namespace exactpen
