#include "exactpen/generators.hpp"
#include "exactpen/harness.hpp"

#include <sstream>

namespace exactpen::harness {

namespace {

/// Tracks the worst violation (lhs - rhs - tol) of a property over many samples.
class Meter {
 public:
  explicit Meter(std::string name) : name_(std::move(name)) {}

  void add(double violation) {
    ++count_;
    if (!std::isfinite(violation)) {
      finite_ = false;
      return;
    }
    worst_ = std::max(worst_, violation);
  }

  void fail(const std::string& why) {
    finite_ = false;
    note_ = why;
  }

  CheckResult result() const {
    CheckResult r;
    r.name = name_;
    r.passed = finite_ && worst_ <= 0 && count_ > 0;
    r.worst_margin = worst_;
    std::ostringstream detail;
    detail << count_ << " samples";
    if (!finite_) detail << ", " << (note_.empty() ? "non-finite value" : note_);
    r.detail = detail.str();
    return r;
  }

 private:
  std::string name_;
  double worst_ = -std::numeric_limits<double>::infinity();
  long count_ = 0;
  bool finite_ = true;
  std::string note_;
};

void push(SuiteReport& report, const Meter& meter) { report.checks.push_back(meter.result()); }

Index dim_for(SetKind kind, Rng& rng) {
  const Index n = 2 + static_cast<Index>(rng.below(4));
  return kind == SetKind::SimplexProduct ? 2 * (1 + n / 2) : n;
}

Vec random_member(const SimpleSetd& set, Rng& rng) {
  return set.project(Vec(3.0 * rng.normal_vector(set.dim())));
}

void set_checks(SuiteReport& report, Rng& rng) {
  for (SetKind kind : all_set_kinds()) {
    const std::string tag = "sets." + std::string(to_string(kind)) + ".";
    const Index n = dim_for(kind, rng);
    const SimpleSetd set = random_set(kind, n, rng);
    Meter member(tag + "projection_in_set"), idem(tag + "idempotence"),
        nonexp(tag + "non_expansive"), vi(tag + "variational_inequality"),
        lip(tag + "distance_lipschitz"), sub(tag + "distance_subgradient"),
        diam(tag + "diameter_bound");
    for (int k = 0; k < 200; ++k) {
      const Vec x = 3.0 * rng.normal_vector(n);
      const Vec p = set.project(x);
      member.add(set.residual(p) - 1e-12 * std::max(1.0, x.norm()));
      idem.add((set.project(p) - p).norm() - 1e-10);
    }
    for (int k = 0; k < 100; ++k) {
      const Vec x = 3.0 * rng.normal_vector(n);
      const Vec y = 3.0 * rng.normal_vector(n);
      const Vec px = set.project(x);
      nonexp.add((px - set.project(y)).norm() - (x - y).norm() - 1e-10);
      const Vec c = random_member(set, rng);
      vi.add((x - px).dot(c - px) - 1e-10 * std::max(1.0, x.norm() * c.norm()));
      lip.add(std::abs(distance(set, x) - distance(set, y)) - (x - y).norm() - 1e-10);
      const Vec g = distance_subgradient(set, x);
      sub.add(distance(set, x) + g.dot(y - x) - distance(set, y) - 1e-9);
      if (const auto D = set.diameter()) {
        diam.add((random_member(set, rng) - random_member(set, rng)).norm() - *D - 1e-10);
      }
    }
    push(report, member);
    push(report, idem);
    push(report, nonexp);
    push(report, vi);
    push(report, lip);
    push(report, sub);
    if (set.diameter()) push(report, diam);
  }
}

/// max of sum u_i d_i over the nonnegative dual ball, by sampling and local refinement.
double brute_force_maximizer_value(const AbsoluteNormd& P, const Vec& d, Rng& rng) {
  const Index m = d.size();
  auto feasible = [&](Vec u) {
    u = u.cwiseAbs();
    const double dual = P.eval_dual(u);
    return dual > 1.0 ? Vec(u / dual) : u;
  };
  Vec best = Vec::Zero(m);
  double best_value = 0;
  for (int k = 0; k < 2000; ++k) {
    const Vec u = feasible(rng.uniform_vector(m, 0.0, 1.0) * rng.uniform(0.0, 3.0));
    if (u.dot(d) > best_value) {
      best_value = u.dot(d);
      best = u;
    }
  }
  double step = 0.1;
  for (int k = 0; k < 4000 && step > 1e-12; ++k) {
    const Vec u = feasible(best + step * rng.normal_vector(m));
    const Vec stretched = P.eval_dual(u) > 0 ? Vec(u / P.eval_dual(u)) : u;
    const double value = std::max(u.dot(d), stretched.dot(d));
    if (value > best_value) {
      best_value = value;
      best = u.dot(d) >= stretched.dot(d) ? u : stretched;
    } else if (k % 20 == 19) {
      step *= 0.5;
    }
  }
  return best_value;
}

void norm_checks(SuiteReport& report, Rng& rng) {
  for (int kind = 0; kind < 4; ++kind) {
    const Index m = 1 + static_cast<Index>(rng.below(5));
    AbsoluteNormd P = kind == 0   ? AbsoluteNormd::l1()
                      : kind == 1 ? AbsoluteNormd::l2()
                      : kind == 2 ? AbsoluteNormd::linf()
                                  : AbsoluteNormd::weighted_l1(rng.uniform_vector(m, 0.5, 2.0));
    const char* names[] = {"l1", "l2", "linf", "wl1"};
    const std::string tag = "norms." + std::string(names[kind]) + ".";
    Meter absolute(tag + "absolute"), triangle(tag + "triangle"), monotone(tag + "monotone"),
        duality(tag + "duality_inequality"), attained(tag + "maximizer_attains_norm"),
        ball(tag + "dual_ball_projection"), brute(tag + "maximizer_vs_brute_force");
    for (int k = 0; k < 200; ++k) {
      const Vec u = rng.normal_vector(m);
      const Vec v = rng.normal_vector(m);
      absolute.add(std::abs(P.eval(u) - P.eval(u.cwiseAbs())) - 1e-12);
      triangle.add(P.eval(u + v) - P.eval(u) - P.eval(v) - 1e-10);
      const Vec lo = u.cwiseAbs();
      const Vec hi = lo + v.cwiseAbs();
      monotone.add(P.eval(lo) - P.eval(hi) - 1e-10);
      duality.add(u.dot(v) - P.eval(u) * P.eval_dual(v) - 1e-10);
      const Vec d = u.cwiseAbs();
      const Vec star = P.linear_maximizer(d);
      attained.add(std::max(std::abs(star.dot(d) - P.eval(d)), P.eval_dual(star) - 1.0) - 1e-10);
    }
    for (int k = 0; k < 10; ++k) {
      const Vec u = 3.0 * rng.normal_vector(m);
      const double radius = rng.uniform(0.2, 2.0);
      const Vec p = P.project_dual_ball(u, radius);
      ball.add(P.eval_dual(p) - radius - 1e-10);
      for (int j = 0; j < 1000; ++j) {
        Vec c = 3.0 * rng.normal_vector(m);
        const double dual = P.eval_dual(c);
        if (dual > radius) c *= radius / dual * rng.uniform();
        ball.add((u - p).norm() - (u - c).norm() - 1e-10);
      }
      const Vec d = rng.uniform_vector(m, 0.0, 2.0);
      brute.add(brute_force_maximizer_value(P, d, rng) - P.linear_maximizer(d).dot(d) - 1e-8);
    }
    push(report, absolute);
    push(report, triangle);
    push(report, monotone);
    push(report, duality);
    push(report, attained);
    push(report, ball);
    push(report, brute);
  }
}

PenaltyModeld random_model(const AbsoluteNormd& norm, Index n, Index m, Rng& rng) {
  std::vector<SimpleSetd> sets;
  const Vec anchor = rng.uniform_vector(n, -1.0, 1.0);
  for (Index i = 0; i < m; ++i) sets.push_back(random_set_containing(anchor, rng));
  return PenaltyModeld(norm, sets);
}

/// max over Y in the unit dual set of sum_i <x, y_i> - sigma_i(y_i), by sampling then ascent.
double sampled_dual_value(const PenaltyModeld& model, const Vec& x, Rng& rng) {
  const Index n = x.size();
  const Index m = model.m();
  auto value = [&](const DualBlockd& Y) {
    double v = 0;
    for (Index i = 0; i < m; ++i) {
      v += x.dot(Y.col(i)) - model.sets[static_cast<std::size_t>(i)].support(Vec(Y.col(i)));
    }
    return v;
  };
  DualBlockd best = DualBlockd::Zero(n, m);
  double best_value = 0;
  for (int k = 0; k < 1000; ++k) {
    const DualBlockd Y = random_dual_block(model.norm, 1.0, n, m, rng);
    if (const double v = value(Y); v > best_value) {
      best_value = v;
      best = Y;
    }
  }
  // Projected supergradient ascent; x - support_point(y_i) is a supergradient.
  // Restarts from the best point with shrinking steps.
  for (double scale : {0.5, 0.1, 0.02, 0.004}) {
    DualBlockd Y = best;
    for (int t = 1; t <= 5000; ++t) {
      DualBlockd G(n, m);
      for (Index i = 0; i < m; ++i) {
        G.col(i) = x - model.sets[static_cast<std::size_t>(i)].support_point(Vec(Y.col(i)));
      }
      Y = project_Y(model.norm, 1.0, DualBlockd(Y + (scale / std::sqrt(double(t))) * G));
      if (const double v = value(Y); v > best_value) {
        best_value = v;
        best = Y;
      }
    }
  }
  return best_value;
}

void penalty_checks(SuiteReport& report, Rng& rng) {
  for (int kind = 0; kind < 4; ++kind) {
    const Index n = 2 + static_cast<Index>(rng.below(3));
    const Index m = 1 + static_cast<Index>(rng.below(3));
    AbsoluteNormd P = kind == 0   ? AbsoluteNormd::l1()
                      : kind == 1 ? AbsoluteNormd::l2()
                      : kind == 2 ? AbsoluteNormd::linf()
                                  : AbsoluteNormd::weighted_l1(rng.uniform_vector(m, 0.5, 2.0));
    const PenaltyModeld model = random_model(P, n, m, rng);
    const char* names[] = {"l1", "l2", "linf", "wl1"};
    const std::string tag = "penalty." + std::string(names[kind]) + ".";
    const double P1 = P.norm_of_ones(m);
    Meter lip(tag + "lipschitz"), sub(tag + "subgradient_inequality"),
        bounded(tag + "subgradient_bound"), dual_upper(tag + "dual_never_exceeds"),
        dual_close(tag + "dual_attains");
    for (int k = 0; k < 500; ++k) {
      const Vec x = rng.uniform_vector(n, -3.0, 3.0);
      const Vec y = rng.uniform_vector(n, -3.0, 3.0);
      const double hx = eval_hP(model, x);
      lip.add(std::abs(hx - eval_hP(model, y)) - P1 * (x - y).norm() - 1e-9);
      const Vec g = subgrad_hP(model, x);
      sub.add(hx + g.dot(y - x) - eval_hP(model, y) - 1e-9);
      bounded.add(g.norm() - P1 - 1e-9);
    }
    for (int k = 0; k < 3; ++k) {
      const Vec x = rng.uniform_vector(n, -3.0, 3.0);
      const double h = eval_hP(model, x);
      const double sampled = sampled_dual_value(model, x, rng);
      dual_upper.add(sampled - h - 1e-9);
      dual_close.add(h - sampled - 1e-3);
    }
    push(report, lip);
    push(report, sub);
    push(report, bounded);
    push(report, dual_upper);
    push(report, dual_close);
  }

  // Regularity sandwich d_C <= upsilon_P h_P on instances with known upsilon.
  std::vector<ProblemInstance> known;
  for (const char* norm : {"l1", "l2", "linf"}) {
    WedgeOptions w;
    w.slope = 0.1;
    w.norm = norm;
    known.push_back(wedge_testbed(w));
    w.slope = 1.0;
    known.push_back(wedge_testbed(w));
  }
  known.push_back(two_box_quadratic());
  Meter sandwich("penalty.regularity_sandwich");
  for (const auto& instance : known) {
    for (int k = 0; k < 200; ++k) {
      const Vec x = sample_point(instance.domain, rng);
      const double dc = distance_to_intersection(instance.penalty.sets, x);
      sandwich.add(dc - *instance.cfg.upsilon_P * instance.penalty_value(x) - 1e-6);
    }
  }
  push(report, sandwich);
}

void prox_checks(SuiteReport& report, Rng& rng) {
  const auto& kinds = closed_form_support_kinds();
  Meter optimal("proxmap.prox_vs_reference"), firm("proxmap.firm_non_expansive"),
      feasible("proxmap.prox_output_feasible"), idem("proxmap.project_Y_idempotent"),
      nonexp("proxmap.project_Y_non_expansive"), gsub("proxmap.g_subgradient_point_in_sets");
  const double gammas[] = {0.5, 1.0, 2.0};
  const double lambdas[] = {0.5, 2.0};
  for (int k = 0; k < 100; ++k) {
    const Index n = 1 + static_cast<Index>(rng.below(6));
    const Index m = 1 + static_cast<Index>(rng.below(4));
    std::vector<SimpleSetd> sets;
    for (Index i = 0; i < m; ++i) sets.push_back(random_set(kinds[rng.below(kinds.size())], n, rng));
    const PenaltyModeld model(random_norm(m, rng, false), sets);
    const double gamma = gammas[rng.below(3)];
    const double lambda = lambdas[rng.below(2)];
    DualBlockd Y(n, m), Z(n, m);
    for (Index i = 0; i < Y.size(); ++i) {
      Y.data()[i] = 2.0 * rng.normal();
      Z.data()[i] = 2.0 * rng.normal();
    }
    const DualBlockd out = prox_g(model, lambda, gamma, Y);
    const DualBlockd ref = prox_reference(model, lambda, gamma, Y, 1000);
    optimal.add(prox_objective(model, gamma, Y, out) - prox_objective(model, gamma, Y, ref) - 1e-6);
    feasible.add(dual_infeasibility(model.norm, lambda, out) - 1e-10);
    const DualBlockd outZ = prox_g(model, lambda, gamma, Z);
    const DualBlockd diff = out - outZ;
    firm.add(diff.squaredNorm() - (diff.array() * (Y - Z).array()).sum() - 1e-9);
    const DualBlockd pY = project_Y(model.norm, lambda, Y);
    idem.add((project_Y(model.norm, lambda, pY) - pY).norm() - 1e-10);
    nonexp.add((pY - project_Y(model.norm, lambda, Z)).norm() - (Y - Z).norm() - 1e-10);
    const DualBlockd G = g_subgradient_point(model, gamma, Y);
    for (Index i = 0; i < m; ++i) {
      gsub.add(model.sets[static_cast<std::size_t>(i)].residual(Vec(G.col(i))) - 1e-10);
    }
  }
  push(report, optimal);
  push(report, firm);
  push(report, feasible);
  push(report, idem);
  push(report, nonexp);
  push(report, gsub);
}

void solver_checks(SuiteReport& report, Rng& rng) {
  Meter primal("solvers.primal_iterates_in_X"), dual("solvers.dual_iterates_in_Y"),
      xhat("solvers.output_in_X"), records("solvers.record_count"),
      best("solvers.best_is_running_minimum"), determinism("solvers.deterministic");
  struct Run {
    BaseSolver solver;
    ProblemInstance instance;
  };
  const std::uint64_t toy_seed = rng.below(1000) + 1;
  std::vector<Run> runs = {
      {BaseSolver::Sps, wedge_testbed()},
      {BaseSolver::Sps, feasibility_toy(ToyKind::Mixed, 3, 3, toy_seed)},
      {BaseSolver::Eppd, two_box_quadratic()},
      {BaseSolver::Eppd, graph_matching({6, toy_seed})},
      {BaseSolver::Epapd, two_box_quadratic()},
      {BaseSolver::Smp, piecewise_linear_toy()},
  };
  for (const auto& run : runs) {
    SolverParams params;
    params.iterations = 2000;
    params.seed = toy_seed;
    params.enforce_lambda_threshold = run.instance.cfg.upsilon_P.has_value();
    const RunTrace a = run_solver(run.solver, run.instance, params);
    const RunTrace b = run_solver(run.solver, run.instance, params);
    primal.add(a.max_primal_residual - 1e-10);
    if (run.solver != BaseSolver::Sps) dual.add(a.max_dual_infeasibility - 1e-10);
    xhat.add(run.instance.domain.residual(a.x_hat) - 1e-10);
    records.add(std::abs(double(a.records.size()) - double(params.iterations)));
    double running = std::numeric_limits<double>::infinity();
    for (const auto& r : a.records) running = std::min(running, r.f + r.lambda_h_p);
    best.add(std::abs(running - a.best_value) - 1e-12 * std::max(1.0, std::abs(running)));
    bool same = a.x_hat == b.x_hat && a.records.size() == b.records.size();
    for (std::size_t i = 0; same && i < a.records.size(); ++i) {
      same = a.records[i].f == b.records[i].f && a.records[i].h_p == b.records[i].h_p;
    }
    determinism.add(same ? -1.0 : 1.0);
  }
  push(report, primal);
  push(report, dual);
  push(report, xhat);
  push(report, records);
  push(report, best);
  push(report, determinism);

  Meter product("solvers.epapd_tau_gamma"), theta("solvers.epapd_theta_range"),
      decreasing("solvers.epapd_tau_decreasing");
  for (int k = 0; k < 5; ++k) {
    const double M = std::pow(10.0, rng.uniform(-1.0, 3.0));
    const double mu = M * std::pow(10.0, rng.uniform(-3.0, 0.0));
    const Index m = 1 + static_cast<Index>(rng.below(10));
    const EpapdSchedule s = epapd_schedule(M, mu, m, 10000);
    for (std::size_t t = 0; t < s.tau.size(); ++t) {
      product.add(std::abs(s.tau[t] * s.gamma[t] - 1.0 / (2.0 * double(m))) - 1e-14);
      theta.add(std::max(-s.theta[t], s.theta[t] - 1.0));
      if (t > 0) decreasing.add(s.tau[t] - s.tau[t - 1]);
      if (s.theta[t] <= 0) theta.add(1.0);
    }
  }
  push(report, product);
  push(report, theta);
  push(report, decreasing);

  Meter average("solvers.weighted_average");
  for (int k = 0; k < 20; ++k) {
    const Index n = 1 + static_cast<Index>(rng.below(4));
    const int count = 1 + static_cast<int>(rng.below(6));
    std::vector<Vec> points;
    std::vector<double> gammas;
    Vec num = Vec::Zero(n);
    double den = 0;
    for (int i = 0; i < count; ++i) {
      points.push_back(rng.normal_vector(n));
      gammas.push_back(rng.uniform(0.1, 2.0));
      num += points.back() / gammas.back();
      den += 1.0 / gammas.back();
    }
    average.add((weighted_average(points, gammas) - num / den).norm() - 1e-12);
  }
  push(report, average);

  // Convex SPS against its rate bound with 5% slack.
  Meter bound("solvers.sps_convex_bound");
  WedgeOptions w;
  w.slope = 1.0;
  w.objective = WedgeObjective::Linear;
  const ProblemInstance wedge = wedge_testbed(w);
  const ReferenceSolution ref = reference_optimum(wedge, 100000);
  for (long T : {1000L, 10000L}) {
    SolverParams params;
    params.iterations = T;
    params.record_trace = false;
    params.seed = toy_seed;
    const RunTrace trace = sps(wedge, params);
    const double P1 = wedge.penalty.norm.norm_of_ones(wedge.m());
    const double limit = 3.0 * wedge.diameter() * (wedge.cfg.lipschitz + wedge.lambda() * P1) /
                         (2.0 * std::sqrt(double(T)));
    bound.add(wedge.penalized(trace.x_hat) - ref.value - 1.05 * limit);
  }
  push(report, bound);
}

void problem_checks(SuiteReport& report, Rng& rng) {
  const std::uint64_t seed = rng.below(1000) + 1;
  WedgeOptions linear;
  linear.objective = WedgeObjective::Linear;
  PiecewiseLinearOptions subgradient_view;
  subgradient_view.view = OracleView::Subgradient;
  GraphMatchingOptions identical{6, seed};
  identical.mode = GraphMode::Identical;
  std::vector<ProblemInstance> instances = {
      counter_example_1(), wedge_testbed(), wedge_testbed(linear),
      graph_matching({6, seed}), graph_matching(identical),
      feasibility_toy(ToyKind::Balls, 3, 3, seed), feasibility_toy(ToyKind::Boxes, 4, 2, seed),
      feasibility_toy(ToyKind::Halfspaces, 3, 4, seed), feasibility_toy(ToyKind::Mixed, 5, 3, seed),
      two_box_quadratic(), piecewise_linear_toy(), piecewise_linear_toy(subgradient_view)};
  Meter oracle("problems.validate_oracle"), certified("problems.certified_feasible_point");
  for (const auto& instance : instances) {
    const OracleReport r = validate_oracle(instance.oracle, instance.domain, 20, seed);
    oracle.add(r.passed() ? -1.0 : 1.0);
    if (!r.passed()) oracle.fail(instance.name + " failed oracle validation");
    std::optional<Vec> point = instance.anchor ? instance.anchor : instance.known_minimizer;
    if (!point) {
      certified.fail(instance.name + " has no certified point");
      continue;
    }
    for (const auto& set : instance.penalty.sets) certified.add(set.residual(*point) - 1e-10);
    certified.add(instance.domain.residual(*point) - 1e-10);
  }
  push(report, oracle);
  push(report, certified);

  Meter upsilon("problems.wedge_upsilon_measured");
  for (double slope : {0.1, 1.0}) {
    WedgeOptions w;
    w.slope = slope;
    const ProblemInstance wedge = wedge_testbed(w);
    double sup = 0;
    for (int k = 0; k < 10000; ++k) {
      Vec x = rng.uniform_vector(2, -20.0, 20.0);
      x(0) += 1.0 / slope;
      double worst = 0;
      for (const auto& set : wedge.penalty.sets) worst = std::max(worst, distance(set, x));
      if (worst <= 1e-9) continue;
      sup = std::max(sup, distance_to_intersection(wedge.penalty.sets, x) / worst);
    }
    upsilon.add(sup - wedge_upsilon(slope) - 1e-6);
  }
  push(report, upsilon);
}

void refsolve_checks(SuiteReport& report, Rng& rng) {
  Meter reproducible("refsolve.reference_reproducible"), prox_best("refsolve.prox_reference_monotone"),
      feasible("refsolve.distance_feasible_zero");
  TwoBoxOptions o;
  o.center = rng.uniform_vector(2, -1.0, 2.0);
  ProblemInstance instance = two_box_quadratic(o);
  instance.fingerprint.clear();  // bypass the cache
  const ReferenceSolution a = reference_optimum(instance, 100000);
  const ReferenceSolution b = reference_optimum(instance, 100000);
  reproducible.add(a.value == b.value && a.point == b.point ? -1.0 : 1.0);
  push(report, reproducible);

  const auto& kinds = closed_form_support_kinds();
  for (int k = 0; k < 10; ++k) {
    const Index n = 2 + static_cast<Index>(rng.below(3));
    const Index m = 1 + static_cast<Index>(rng.below(3));
    std::vector<SimpleSetd> sets;
    for (Index i = 0; i < m; ++i) sets.push_back(random_set(kinds[rng.below(kinds.size())], n, rng));
    const PenaltyModeld model(random_norm(m, rng, false), sets);
    DualBlockd Y(n, m);
    for (Index i = 0; i < Y.size(); ++i) Y.data()[i] = 2.0 * rng.normal();
    const double v1 = prox_objective(model, 1.0, Y, prox_reference(model, 1.0, 1.0, Y, 200));
    const double v2 = prox_objective(model, 1.0, Y, prox_reference(model, 1.0, 1.0, Y, 400));
    prox_best.add(v2 - v1);
    const Vec anchor = rng.uniform_vector(n, -1.0, 1.0);
    std::vector<SimpleSetd> around;
    for (int i = 0; i < 3; ++i) around.push_back(random_set_containing(anchor, rng));
    feasible.add(distance_to_intersection(around, anchor) - 1e-10);
  }
  push(report, prox_best);
  push(report, feasible);
}

void harness_checks(SuiteReport& report, Rng& rng) {
  Meter roundtrip("harness.config_roundtrip"), header("harness.trace_header");
  const std::vector<std::string> names = {"sps", "eppd", "epapd", "smp"};
  for (int k = 0; k < 20; ++k) {
    RunConfig c;
    c.problem.name = "wedge";
    c.problem.params["slope"] = rng.uniform(0.05, 2.0);
    c.problem.params["objective"] = std::string(rng.uniform() < 0.5 ? "linear" : "quadratic");
    c.problem.params["lo"] = std::vector<double>{rng.normal(), rng.normal()};
    c.solver.name = names[rng.below(names.size())];
    c.solver.params.iterations = 1 + static_cast<long>(rng.below(100000));
    if (rng.uniform() < 0.5) c.solver.params.eta = rng.uniform(0.01, 5.0);
    if (rng.uniform() < 0.5) c.solver.params.tau = 1.0 / 3.0;
    c.solver.params.seed = rng.below(1u << 30);
    c.report.epsilon = rng.uniform(1e-4, 1e-1);
    const RunConfig back = parse_run_config(serialize(c));
    roundtrip.add(back == c ? -1.0 : 1.0);
  }
  RunTrace trace;
  trace.records.push_back({1, 0.1, 0.2, 0.3, 0.4});
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  header.add(csv.str().rfind("t,f,h_p,lambda_h_p,elapsed_ms\n", 0) == 0 ? -1.0 : 1.0);
  push(report, roundtrip);
  push(report, header);
}

}  // namespace

SuiteReport check_invariants(std::uint64_t seed) {
  SuiteReport report;
  report.suite = "invariants";
  report.values["seed"] = seed;
  Rng rng(0x9e3779b97f4a7c15ULL ^ seed);
  set_checks(report, rng);
  norm_checks(report, rng);
  penalty_checks(report, rng);
  prox_checks(report, rng);
  solver_checks(report, rng);
  problem_checks(report, rng);
  refsolve_checks(report, rng);
  harness_checks(report, rng);
  return report;
}

}  // namespace exactpen::harness
