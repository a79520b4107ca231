#pragma once

#include "exactpen/instance.hpp"
#include "exactpen/proxmap.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace exactpen {

enum class SpsSchedule { Auto, Convex, StronglyConvex };
enum class RunStatus { Completed, Diverged };

std::string to_string(SpsSchedule schedule);
SpsSchedule sps_schedule_from_string(const std::string& tag);
std::string to_string(RunStatus status);

/// Iteration budget and optional step-size overrides. Unset steps take the
/// defaults derived from the instance constants.
struct SolverParams {
  long iterations = 1000;
  SpsSchedule sps_schedule = SpsSchedule::Auto;
  std::optional<double> eta;      // SPS convex: gamma_t = eta / sqrt(t)
  std::optional<double> distance_bound;  // SPS: bound on ||x^1 - x*|| used instead of D in eta
  std::optional<double> tau;      // EPPD primal step
  std::optional<double> gamma;    // EPPD dual step
  std::optional<double> gamma_x;  // SMP
  std::optional<double> gamma_y;
  std::optional<double> gamma_z;
  bool enforce_lambda_threshold = true;
  std::optional<double> divergence_floor;  // overrides the instance floor
  double divergence_radius_factor = 1e3;
  bool record_trace = true;
  std::uint64_t seed = 0;

  bool operator==(const SolverParams&) const = default;
};

struct TraceRecord {
  long t = 0;
  double f = 0;
  double h_p = 0;
  double lambda_h_p = 0;
  double elapsed_ms = 0;
};

struct RunTrace {
  std::string algorithm;
  double lambda = 0;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;
  Vec x_hat;
  Vec last_iterate;
  std::optional<DualBlockd> y_hat;
  std::optional<DualBlockd> y_last;
  std::optional<Vec> z_hat;
  Vec best_point;  // iterate with the smallest f^lambda seen
  double best_value = 0;
  std::vector<std::pair<std::string, double>> parameters;  // step sizes actually used
  RunStatus status = RunStatus::Completed;
  std::string diagnostic;
  long iterations_run = 0;
  double max_primal_residual = 0;     // worst distance of an iterate to X
  double max_dual_infeasibility = 0;  // worst violation of Y^lambda_P
  double elapsed_ms = 0;

  std::optional<double> parameter(const std::string& key) const;
};

/// sum_t x_t / gamma_t divided by sum_t 1 / gamma_t.
Vec weighted_average(const std::vector<Vec>& points, const std::vector<double>& gammas);

RunTrace sps(const ProblemInstance& instance, const SolverParams& params);
RunTrace eppd(const ProblemInstance& instance, const SolverParams& params);
RunTrace epapd(const ProblemInstance& instance, const SolverParams& params);
RunTrace smp(const ProblemInstance& instance, const SolverParams& params);

struct EpapdSchedule {
  std::vector<double> theta;
  std::vector<double> tau;
  std::vector<double> gamma;
};

/// theta_t, tau_t, gamma_t for t = 0 .. steps.
EpapdSchedule epapd_schedule(double gradient_lipschitz, double mu, Index m, long steps);

enum class BaseSolver { Sps, Eppd, Epapd, Smp };

std::string to_string(BaseSolver solver);
BaseSolver base_solver_from_string(const std::string& tag);

RunTrace run_solver(BaseSolver solver, const ProblemInstance& instance, const SolverParams& params);

/// Rate constants of T_lambda = ceil(C lambda^a / eps^b).
struct BudgetRule {
  double C = 0;
  double a = 0;
  double b = 0;
  long budget(double lambda, double epsilon) const;
};

BudgetRule doubling_budget_rule(BaseSolver solver, const ProblemInstance& instance,
                                SpsSchedule schedule, double lambda0);

/// Decides whether a round's output is accepted. Receives x_hat and the round's lambda.
using FeasibilityTest = std::function<bool(const Vec& x_hat, double lambda)>;

struct DoublingOptions {
  double lambda0 = 1.0;
  double epsilon = 1e-2;
  int max_rounds = 40;
  SolverParams base;                   // iteration count is replaced per round
  std::optional<FeasibilityTest> test;  // default h_P(x_hat) <= eps / lambda
  std::optional<long> max_round_budget;
};

struct DoublingRound {
  int round = 0;
  double lambda = 0;
  long iterations = 0;
  double h_p = 0;
  bool passed = false;
};

struct DoublingResult {
  RunTrace trace;
  double final_lambda = 0;
  int doublings = 0;
  long total_iterations = 0;
  long final_budget = 0;
  std::vector<DoublingRound> rounds;
};

/// Raised when the round cap is hit; carries the per-round log.
class DoublingFailure : public Error {
 public:
  DoublingFailure(const std::string& what, std::vector<DoublingRound> rounds)
      : Error(what), rounds(std::move(rounds)) {}
  std::vector<DoublingRound> rounds;
};

DoublingResult doubling_solve(const ProblemInstance& instance, BaseSolver solver,
                              const DoublingOptions& options);

}  // namespace exactpen
