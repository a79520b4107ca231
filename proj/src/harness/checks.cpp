#include "exactpen/harness.hpp"

namespace exactpen::harness {

namespace {

CheckResult closeness(const std::string& name, double value, double expected, double tol) {
  CheckResult r;
  r.name = name;
  r.worst_margin = std::abs(value - expected) - tol;
  r.passed = std::isfinite(value) && r.worst_margin <= 0;
  r.detail = "value " + format_number(value) + ", expected " + format_number(expected);
  return r;
}

CheckResult truth(const std::string& name, bool ok, double margin, const std::string& detail) {
  CheckResult r;
  r.name = name;
  r.passed = ok;
  r.worst_margin = margin;
  r.detail = detail;
  return r;
}

}  // namespace

SuiteReport check_ce1() {
  SuiteReport report;
  report.suite = "ce1";
  const Ce1Report ce = check_counter_example_1(4.0);
  const double expected20 = -20.0 + 8.0 / std::sqrt(1.01);
  report.checks.push_back(closeness("F(10,0)", ce.at_10, -10.0, 1e-9));
  report.checks.push_back(closeness("F(20,0)", ce.at_20, expected20, 1e-9));
  report.checks.push_back(truth("F(20,0) < F(10,0)", ce.at_20 < ce.at_10, ce.at_20 - ce.at_10,
                                format_number(ce.at_20) + " vs " + format_number(ce.at_10)));

  // Under-penalized: lambda = 4 must trip the divergence guard.
  SolverParams loose;
  loose.iterations = 200000;
  loose.enforce_lambda_threshold = false;
  loose.record_trace = false;
  const RunTrace diverged = sps(counter_example_1(4.0), loose);
  report.checks.push_back(truth("lambda=4 diverges", diverged.status == RunStatus::Diverged,
                                diverged.status == RunStatus::Diverged ? -1.0 : 1.0,
                                diverged.diagnostic));

  report.values = {{"gamma", ce.gamma},
                   {"F(10,0)", ce.at_10},
                   {"F(20,0)", ce.at_20},
                   {"lambda4_stop_iteration", diverged.iterations_run}};
  return report;
}

SuiteReport check_ce2() {
  SuiteReport report;
  report.suite = "ce2";
  const Ce2Report ce = check_counter_example_2({1.0, 10.0, 100.0});
  nlohmann::json values = nlohmann::json::array();
  for (const auto& e : ce.entries) {
    const std::string tag = "gamma=" + format_number(e.gamma);
    report.checks.push_back(closeness("F(1/g,1/g^2) " + tag, e.value, e.expected, 1e-12));
    report.checks.push_back(truth("below F(0,0) " + tag, e.value < ce.at_origin,
                                  e.value - ce.at_origin, format_number(e.value)));
    values.push_back({{"gamma", e.gamma}, {"value", e.value}, {"expected", e.expected}});
  }
  report.checks.push_back(closeness("F(0,0)", ce.at_origin, 0.0, 1e-12));
  report.values = {{"entries", values}, {"F(0,0)", ce.at_origin}};
  return report;
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  int failures = 0;
  for (const auto& c : report.checks) {
    if (!c.passed) ++failures;
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"worst_margin", std::isfinite(c.worst_margin) ? nlohmann::json(c.worst_margin)
                                                                     : nlohmann::json(nullptr)},
                      {"detail", c.detail}});
  }
  return {{"suite", report.suite},
          {"passed", report.passed()},
          {"failures", failures},
          {"checks", checks},
          {"values", report.values}};
}

}  // namespace exactpen::harness
