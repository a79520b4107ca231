#include "exactpen/harness.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace exactpen::harness {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json vector_json(const Vec& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

bool closed_form_support_domain(const SimpleSetd& domain) {
  switch (domain.kind()) {
    case SetKind::Box:
    case SetKind::L2Ball:
    case SetKind::L1Ball:
    case SetKind::LinfBall:
      return true;
    default:
      return false;
  }
}

}  // namespace

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "t,f,h_p,lambda_h_p,elapsed_ms\n";
  for (const auto& r : trace.records) {
    out << r.t << ',' << format_number(r.f) << ',' << format_number(r.h_p) << ','
        << format_number(r.lambda_h_p) << ',' << format_number(r.elapsed_ms) << '\n';
  }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

std::optional<double> duality_gap_bound(const ProblemInstance& instance, const RunTrace& trace) {
  if (!trace.y_hat || trace.x_hat.size() == 0) return std::nullopt;
  if (!closed_form_support_domain(instance.domain)) return std::nullopt;
  for (const auto& set : instance.penalty.sets) {
    if (!set.has_support_function()) return std::nullopt;
  }
  const Vec& x = trace.x_hat;
  const DualBlockd& Y = *trace.y_hat;

  // phi is the convex part of L in x: f itself, or F(., z_hat) for saddle oracles.
  double phi = 0;
  Vec g;
  double upper = 0;
  if (const auto* s = std::get_if<SmoothOracle>(&instance.oracle)) {
    phi = s->value(x);
    g = s->gradient(x);
    upper = phi;
  } else if (const auto* n = std::get_if<NonsmoothOracle>(&instance.oracle)) {
    phi = n->value(x);
    g = n->subgradient(x);
    upper = phi;
  } else {
    const auto& sad = std::get<SaddleOracle>(instance.oracle);
    if (!trace.z_hat || !sad.primal_value) return std::nullopt;
    phi = sad.value(x, *trace.z_hat);
    g = sad.grad_x(x, *trace.z_hat);
    upper = sad.primal_value(x);
  }
  // sup over Y^lambda_P of L(x_hat, Y) is f(x_hat) + lambda h_P(x_hat).
  upper += instance.cfg.lambda * instance.penalty_value(x);
  const Vec s = block_sum(Y);
  double sigma = 0;
  for (Index i = 0; i < instance.m(); ++i) {
    sigma += instance.penalty.sets[static_cast<std::size_t>(i)].support(Vec(Y.col(i)));
  }
  // Linearizing phi at x_hat gives a lower bound on inf_x L(x, Y_hat).
  const double lower = phi - g.dot(x) - instance.domain.support(Vec(-(g + s))) - sigma;
  return upper - lower;
}

SolveOutcome run_configured(const ProblemInstance& instance, const SolverSpec& solver) {
  SolveOutcome outcome;
  if (solver.name == "doubling") {
    const DoublingSpec spec = solver.doubling.value_or(DoublingSpec{});
    DoublingOptions options;
    options.lambda0 = spec.lambda0;
    options.epsilon = spec.epsilon;
    options.max_rounds = spec.max_rounds;
    options.base = solver.params;
    options.max_round_budget = spec.max_round_budget;
    DoublingResult result =
        doubling_solve(instance, base_solver_from_string(spec.base), options);
    outcome.trace = result.trace;
    outcome.doubling = std::move(result);
    return outcome;
  }
  outcome.trace = run_solver(base_solver_from_string(solver.name), instance, solver.params);
  return outcome;
}

json make_summary(const ProblemInstance& instance, const RunConfig& config,
                  const SolveOutcome& outcome) {
  const RunTrace& trace = outcome.trace;
  const double lambda = trace.lambda;
  const ProblemInstance at_lambda = instance.with_lambda(lambda);
  const double L = instance.cfg.lipschitz;
  const double P1 = instance.penalty.norm.norm_of_ones(instance.m());
  const double D = instance.diameter();
  const double mu = objective_strong_convexity(instance.oracle);
  const long T = trace.iterations_run;

  json doc;
  doc["problem"] = {{"name", instance.name},
                    {"fingerprint", instance.fingerprint},
                    {"dim", instance.dim()},
                    {"m", instance.m()},
                    {"norm", instance.penalty.norm.to_string()}};
  json parameters = json::object();
  for (const auto& [key, value] : trace.parameters) parameters[key] = value;
  doc["solver"] = {{"name", config.solver.name},
                   {"algorithm", trace.algorithm},
                   {"iterations", config.solver.params.iterations},
                   {"iterations_run", T},
                   {"seed", trace.seed},
                   {"parameters", parameters}};
  doc["status"] = to_string(trace.status);
  doc["diagnostic"] = trace.diagnostic;
  doc["lambda"] = lambda;

  json constants = {{"L_f", L},
                    {"L_f_estimated", instance.cfg.lipschitz_estimated},
                    {"mu_f", mu},
                    {"diameter", D},
                    {"P_ones", P1},
                    {"upsilon", optional_number(instance.cfg.upsilon)},
                    {"upsilon_P", optional_number(instance.cfg.upsilon_P)},
                    {"min_valid_lambda", instance.cfg.upsilon_P
                                             ? json(min_valid_lambda(instance.cfg))
                                             : json(nullptr)}};
  if (const auto* s = std::get_if<SmoothOracle>(&instance.oracle)) {
    constants["M_f"] = s->gradient_lipschitz;
    constants["M_f_estimated"] = s->gradient_lipschitz_estimated;
  }
  if (const auto* s = std::get_if<SaddleOracle>(&instance.oracle)) {
    constants["L_F"] = s->gradient_lipschitz;
  }
  doc["constants"] = constants;

  if (trace.x_hat.size() > 0) {
    const double f = at_lambda.objective(trace.x_hat);
    const double h = at_lambda.penalty_value(trace.x_hat);
    doc["final"] = {{"f", f},
                    {"h_p", h},
                    {"lambda_h_p", lambda * h},
                    {"f_lambda", f + lambda * h},
                    {"last_iterate_f_lambda", at_lambda.penalized(trace.last_iterate)},
                    {"best_f_lambda", trace.best_value},
                    {"x_hat", vector_json(trace.x_hat)}};
    const FeasibilityCertificate cert =
        feasibility_certificate(at_lambda.penalty, at_lambda.cfg, trace.x_hat,
                                config.report.epsilon);
    doc["feasibility_certificate"] = {{"epsilon", config.report.epsilon},
                                      {"h_p", cert.h_p},
                                      {"distance_bound", optional_number(cert.distance_bound)},
                                      {"threshold", cert.threshold},
                                      {"passed", cert.passed}};
  }

  json bounds = json::object();
  if (T > 0 && trace.algorithm == "sps_convex") {
    bounds["sps_convex"] = 3.0 * D * (L + lambda * P1) / (2.0 * std::sqrt(double(T)));
  }
  if (T > 0 && trace.algorithm == "sps_strongly_convex" && mu > 0) {
    bounds["sps_strongly_convex"] = 2.0 * std::pow(L + lambda * P1, 2) / (mu * double(T));
  }
  doc["bounds"] = bounds;

  json gap = nullptr;
  if (trace.x_hat.size() > 0) {
    if (const auto bound = duality_gap_bound(at_lambda, trace)) {
      gap = {{"kind", "duality_gap"}, {"value", *bound}};
    } else if (config.report.reference_budget > 0) {
      const ReferenceSolution ref = reference_optimum(at_lambda, config.report.reference_budget,
                                                      config.report.reference_method);
      gap = {{"kind", "reference_gap"},
             {"value", at_lambda.penalized(trace.x_hat) - ref.value},
             {"reference", ref.value},
             {"reference_budget", config.report.reference_budget},
             {"reference_method", to_string(config.report.reference_method)}};
    }
  }
  doc["gap_diagnostic"] = gap;
  doc["residuals"] = {{"max_primal_residual", trace.max_primal_residual},
                      {"max_dual_infeasibility", trace.max_dual_infeasibility}};
  doc["timing"] = {{"elapsed_ms", trace.elapsed_ms},
                   {"per_iteration_us", T > 0 ? 1e3 * trace.elapsed_ms / double(T) : 0.0}};

  if (outcome.doubling) {
    const DoublingResult& d = *outcome.doubling;
    json rounds = json::array();
    for (const auto& r : d.rounds) {
      rounds.push_back({{"round", r.round},
                        {"lambda", r.lambda},
                        {"iterations", r.iterations},
                        {"h_p", r.h_p},
                        {"passed", r.passed}});
    }
    doc["doubling"] = {{"final_lambda", d.final_lambda},
                       {"doublings", d.doublings},
                       {"total_iterations", d.total_iterations},
                       {"final_budget", d.final_budget},
                       {"rounds", rounds}};
  }
  return doc;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0 && y[i] > 0 && std::isfinite(y[i])) {
      pts.emplace_back(std::log(x[i]), std::log(y[i]));
    }
  }
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (const auto& [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= double(pts.size());
  my /= double(pts.size());
  double sxx = 0, sxy = 0;
  for (const auto& [a, b] : pts) {
    sxx += (a - mx) * (a - mx);
    sxy += (a - mx) * (b - my);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace exactpen::harness
