// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "exactpen/dykstra.hpp"
#include "exactpen/generators.hpp"
#include "exactpen/harness.hpp"
#include "exactpen/problems.hpp"
#include "exactpen/proxmap.hpp"
#include "exactpen/refsolve.hpp"
#include "exactpen/solvers.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace exactpen;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

SolverParams quiet(long iterations) {
  SolverParams p;
  p.iterations = iterations;
  p.record_trace = false;
  return p;
}

Outcome prox_equivalence() {
  Rng rng(2024);
  const double gammas[] = {0.5, 1.0, 2.0};
  const double lambdas[] = {0.5, 2.0};
  const auto& kinds = closed_form_support_kinds();
  double worst = -std::numeric_limits<double>::infinity();
  bool feasible = true;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.below(6));
    const Index m = 1 + static_cast<Index>(rng.below(4));
    std::vector<SimpleSetd> sets;
    for (Index i = 0; i < m; ++i) sets.push_back(random_set(kinds[rng.below(kinds.size())], n, rng));
    const PenaltyModeld model(random_norm(m, rng, false), sets);
    const double gamma = gammas[rng.below(3)];
    const double lambda = lambdas[rng.below(2)];
    DualBlockd Y(n, m);
    for (Index i = 0; i < m; ++i) Y.col(i) = 2.0 * rng.normal_vector(n);
    const DualBlockd out = prox_g(model, lambda, gamma, Y);
    const DualBlockd ref = prox_reference(model, lambda, gamma, Y, 20000);
    feasible = feasible && in_dual_set(model.norm, lambda, out, 1e-10);
    worst = std::max(worst, prox_objective(model, gamma, Y, out) - prox_objective(model, gamma, Y, ref));
  }
  return {worst <= 1e-6 && feasible,
          "100 instances, max(prox - reference objective) = " + num(worst) +
              (feasible ? ", all outputs dual feasible" : ", dual infeasible output")};
}

Outcome counter_example_1_run() {
  const Ce1Report ce = check_counter_example_1(4.0);
  const double expected20 = -20.0 + 8.0 / std::sqrt(1.01);
  const bool values = std::abs(ce.at_10 + 10.0) <= 1e-9 && std::abs(ce.at_20 - expected20) <= 1e-9 &&
                      ce.at_20 < ce.at_10;

  SolverParams loose = quiet(200000);
  loose.enforce_lambda_threshold = false;
  const RunTrace diverged = sps(counter_example_1(4.0), loose);

  const ProblemInstance exact = counter_example_1(29.0);
  SolverParams params = quiet(200000);
  params.distance_bound = 10.0;
  const RunTrace t = sps(exact, params);
  const double err = (t.x_hat - vec2(10, 0)).norm();
  const double dC = distance_to_intersection(exact.penalty.sets, t.x_hat);
  const double limit = 1e-2 / exact.cfg.lipschitz;
  const bool ok = values && diverged.status == RunStatus::Diverged && err <= 0.1 && dC <= limit;
  return {ok, "F(10,0)=" + num(ce.at_10) + " F(20,0)=" + num(ce.at_20) + "; lambda=4 " +
                  to_string(diverged.status) + " at t=" + std::to_string(diverged.iterations_run) +
                  "; lambda=29 |x-(10,0)|=" + num(err) + " d_C=" + num(dC) + " (limit " + num(limit) +
                  ")"};
}

Outcome counter_example_2_run() {
  const Ce2Report ce = check_counter_example_2({1.0, 10.0, 100.0});
  bool ok = ce.at_origin == 0.0;
  std::string detail;
  for (const auto& e : ce.entries) {
    ok = ok && std::abs(e.value + 1.0 / e.gamma) <= 1e-12 && e.value < ce.at_origin;
    detail += "F at gamma=" + num(e.gamma) + ": " + num(e.value) + "; ";
  }
  return {ok, detail + "F(0,0)=" + num(ce.at_origin)};
}

Outcome sps_rates() {
  const ProblemInstance wedge = wedge_testbed({});
  const double ref = reference_optimum(wedge, 1000000).value;
  const double L = wedge.cfg.lipschitz + wedge.lambda() * wedge.penalty.norm.norm_of_ones(wedge.m());
  const double mu = objective_strong_convexity(wedge.oracle);
  const double D = wedge.diameter();
  bool ok = mu == 2.0;
  std::string detail = "reference " + num(ref);
  for (long T : {1000L, 10000L, 100000L}) {
    SolverParams p = quiet(T);
    p.sps_schedule = SpsSchedule::StronglyConvex;
    const double strong = wedge.penalized(sps(wedge, p).x_hat) - ref;
    p.sps_schedule = SpsSchedule::Convex;
    const double convex = wedge.penalized(sps(wedge, p).x_hat) - ref;
    const double strong_bound = 1.05 * 2 * L * L / (mu * double(T));
    const double convex_bound = 1.05 * 3 * D * L / (2 * std::sqrt(double(T)));
    ok = ok && strong <= strong_bound && convex <= convex_bound;
    detail += "; T=" + std::to_string(T) + " strong " + num(strong) + "<=" + num(strong_bound) +
              " convex " + num(convex) + "<=" + num(convex_bound);
  }
  return {ok, detail};
}

Outcome feasibility_guarantee() {
  const ProblemInstance wedge = wedge_testbed({});
  const double ref = reference_optimum(wedge, 1000000).value;
  const double U = *wedge.cfg.upsilon_P;
  const double Lf = wedge.cfg.lipschitz;
  const double lambda = wedge.lambda();
  bool ok = std::abs(lambda - 2 * U * Lf) <= 1e-12 * lambda;
  std::string detail = "lambda=" + num(lambda);
  for (double eps : {1e-1, 1e-2}) {
    bool reached = false;
    for (long T = 1000; T <= 10000000 && !reached; T *= 10) {
      const RunTrace t = sps(wedge, quiet(T));
      const double gap = wedge.penalized(t.x_hat) - ref;
      if (gap > eps) continue;
      reached = true;
      const double dC = distance_to_intersection(wedge.penalty.sets, t.x_hat);
      const double bound = eps * U / (lambda - U * Lf) + 1e-6;
      ok = ok && dC <= bound && bound <= eps / Lf + 1e-6;
      detail += "; eps=" + num(eps) + " at T=" + std::to_string(T) + " gap " + num(gap) + " d_C " +
                num(dC) + "<=" + num(bound);
    }
    if (!reached) {
      ok = false;
      detail += "; eps=" + num(eps) + " gap never reached";
    }
  }
  return {ok, detail};
}

Outcome epapd_invariants() {
  double worst = 0;
  bool shape = true;
  const double grid_M[] = {0.5, 1.0, 10.0};
  const double grid_mu[] = {1e-3, 0.1, 1.0};
  const Index grid_m[] = {1, 2, 5};
  for (double M : grid_M) {
    for (double mu : grid_mu) {
      for (Index m : grid_m) {
        const double mu_eff = std::min(mu, M);  // mu_f never exceeds M_f
        const EpapdSchedule s = epapd_schedule(M, mu_eff, m, 10000);
        const double target = 1.0 / (2.0 * double(m));
        for (std::size_t t = 0; t < s.tau.size(); ++t) {
          worst = std::max(worst, std::abs(s.tau[t] * s.gamma[t] - target));
          shape = shape && s.theta[t] > 0 && s.theta[t] <= 1;
          if (t > 0) shape = shape && s.tau[t] < s.tau[t - 1];
        }
      }
    }
  }

  TwoBoxOptions o;
  o.center = vec2(0.7, 0.8);
  const ProblemInstance inst = two_box_quadratic(o);
  const double ref = reference_optimum(inst, 1000000, ReferenceMethod::Eppd).value;
  bool ratios = true;
  std::string detail;
  for (long T : {200L, 400L, 800L}) {
    const double g1 = inst.penalized(epapd(inst, quiet(T)).x_hat) - ref;
    const double g2 = inst.penalized(epapd(inst, quiet(2 * T)).x_hat) - ref;
    ratios = ratios && g2 > 0 && g1 / g2 >= 3.0;
    detail += "; gap(" + std::to_string(T) + ")/gap(" + std::to_string(2 * T) + ")=" + num(g1 / g2);
  }
  return {worst <= 1e-14 && shape && ratios,
          "27 grids x 1e4 steps, max |tau gamma - 1/(2m)| = " + num(worst) + detail};
}

Outcome eppd_rate_shape() {
  const ProblemInstance gm = graph_matching({});
  const double ref = reference_optimum(gm, 1000000, ReferenceMethod::Eppd).value;
  std::vector<double> Ts, gaps;
  std::string detail = "reference " + num(ref) + ", gaps";
  for (long T : {500L, 1000L, 2000L, 4000L, 8000L}) {
    const double gap = gm.penalized(eppd(gm, quiet(T)).x_hat) - ref;
    Ts.push_back(double(T));
    gaps.push_back(gap);
    detail += " " + num(gap);
  }
  const auto slope = harness::loglog_slope(Ts, gaps);
  const bool slope_ok = slope && *slope >= -1.3 && *slope <= -0.7;
  detail += "; slope " + (slope ? num(*slope) : std::string("undefined"));

  GraphMatchingOptions o;
  o.mode = GraphMode::Identical;
  const ProblemInstance same = graph_matching(o);
  const RunTrace t = eppd(same, quiet(5000));
  auto projected = [&](const Vec& x) {
    return same.objective(dykstra_project(same.penalty.sets, x, 1e-10));
  };
  const double last = projected(t.last_iterate);
  const double ergodic = projected(t.x_hat);
  detail += "; identical mode at T=5000: projected f(final iterate) " + num(last) +
            ", projected f(ergodic average) " + num(ergodic);
  return {slope_ok && last <= 1e-3, detail};
}

Outcome smp_end_to_end() {
  PiecewiseLinearOptions sub;
  sub.view = OracleView::Subgradient;
  const ProblemInstance reference_view = piecewise_linear_toy(sub);
  const ReferenceSolution ref = reference_optimum(reference_view, 1000000);
  const double f_ref = reference_view.objective(
      dykstra_project(reference_view.penalty.sets, ref.point, 1e-12));

  const ProblemInstance saddle = piecewise_linear_toy({});
  const RunTrace t = smp(saddle, quiet(20000));
  const Vec feasible = dykstra_project(saddle.penalty.sets, t.x_hat, 1e-12);
  const double gap = saddle.objective(feasible) - f_ref;
  const bool ok = gap <= 1e-3 && t.max_dual_infeasibility <= 1e-10;
  return {ok, "f(P_C(x_hat)) - f_ref = " + num(gap) + " (f_ref " + num(f_ref) +
                  "), max dual infeasibility " + num(t.max_dual_infeasibility)};
}

Outcome doubling_trick() {
  WedgeOptions w;
  w.objective = WedgeObjective::Linear;
  const ProblemInstance wedge = wedge_testbed(w);
  DoublingOptions d;
  d.lambda0 = 1.0;
  d.epsilon = 1e-2;
  const double limit = d.epsilon / wedge.cfg.lipschitz;
  d.test = [&](const Vec& x, double) {
    return distance_to_intersection(wedge.penalty.sets, x) <= limit;
  };
  const DoublingResult r = doubling_solve(wedge, BaseSolver::Eppd, d);
  const double dC = distance_to_intersection(wedge.penalty.sets, r.trace.x_hat);
  const bool ok = r.doublings <= 5 && dC <= limit && r.total_iterations <= 4 * r.final_budget;
  return {ok, std::to_string(r.doublings) + " doublings, final lambda " + num(r.final_lambda) +
                  ", d_C " + num(dC) + "<=" + num(limit) + ", total iterations " +
                  std::to_string(r.total_iterations) + " vs 4 x " + std::to_string(r.final_budget)};
}

Outcome invariant_suite() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed : {1, 2, 3}) {
    const harness::SuiteReport r = harness::check_invariants(seed);
    int failures = 0;
    std::string first;
    for (const auto& c : r.checks) {
      if (c.passed) continue;
      if (failures++ == 0) first = " first failure " + c.name + " (" + c.detail + ")";
    }
    ok = ok && failures == 0;
    detail += "seed " + std::to_string(seed) + ": " + std::to_string(r.checks.size()) + " checks, " +
              std::to_string(failures) + " failures" + first + "; ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"prox oracle equivalence", prox_equivalence},
      {"counter example 1", counter_example_1_run},
      {"counter example 2", counter_example_2_run},
      {"SPS rate bounds", sps_rates},
      {"feasibility guarantee", feasibility_guarantee},
      {"EPAPD recursion and acceleration", epapd_invariants},
      {"EPPD rate shape", eppd_rate_shape},
      {"SMP end to end", smp_end_to_end},
      {"doubling trick", doubling_trick},
      {"invariant suite", invariant_suite},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.passed) ++failed;
    std::cout << (o.passed ? "PASS" : "FAIL") << " " << (k + 1) << " " << criteria[k].first << " ["
              << num(secs) << " s]: " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
