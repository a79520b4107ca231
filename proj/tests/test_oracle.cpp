#include "exactpen/oracle.hpp"
#include "exactpen/problems.hpp"
#include "test_util.hpp"

using namespace exactpen;
using testutil::vec;

namespace {

SmoothOracle shifted_quadratic(const Vec& c, double claimed_M) {
  SmoothOracle o;
  o.value = [c](const Vec& x) { return (x - c).squaredNorm(); };
  o.gradient = [c](const Vec& x) { return Vec(2.0 * (x - c)); };
  o.gradient_lipschitz = claimed_M;
  o.strong_convexity = 2.0;
  o.lipschitz = 2.0 * (2.0 * std::sqrt(2.0) + c.norm());
  return o;
}

const CheckResult* find(const OracleReport& report, const std::string& name) {
  for (const auto& c : report.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("correct quadratic constants pass") {
  const auto domain = SimpleSetd::box(vec({-1, -1}), vec({1, 1}));
  const OracleReport report = validate_oracle(shifted_quadratic(vec({0.5, 0.5}), 2.0), domain, 50);
  CHECK(report.passed());
  REQUIRE(find(report, "gradient_lipschitz") != nullptr);
  REQUIRE(find(report, "finite_difference") != nullptr);
}

TEST_CASE("understated gradient Lipschitz constant fails") {
  const auto domain = SimpleSetd::box(vec({-1, -1}), vec({1, 1}));
  const OracleReport report = validate_oracle(shifted_quadratic(vec({0.5, 0.5}), 1.0), domain, 50);
  CHECK_FALSE(report.passed());
  const CheckResult* lip = find(report, "gradient_lipschitz");
  REQUIRE(lip != nullptr);
  CHECK_FALSE(lip->passed);
  CHECK(find(report, "finite_difference")->passed);
}

TEST_CASE("graph matching gradient matches finite differences") {
  GraphMatchingOptions opt;
  opt.n = 6;
  const ProblemInstance gm = graph_matching(opt);
  const OracleReport report = validate_oracle(gm.oracle, gm.domain, 20, 3);
  const CheckResult* fd = find(report, "finite_difference");
  REQUIRE(fd != nullptr);
  CHECK(fd->passed);
  CHECK(report.passed());
}

TEST_CASE("nonsmooth and saddle oracles pass their checks") {
  const ProblemInstance ce1 = counter_example_1();
  CHECK(validate_oracle(ce1.oracle, ce1.domain, 20).passed());
  const ProblemInstance saddle = piecewise_linear_toy();
  const OracleReport report = validate_oracle(saddle.oracle, saddle.domain, 20);
  CHECK(report.passed());
  CHECK(find(report, "convex_in_x") != nullptr);
  CHECK(find(report, "concave_in_z") != nullptr);
}

TEST_CASE("overstated subgradient bound is caught") {
  NonsmoothOracle o;
  o.value = [](const Vec& x) { return 5.0 * x.lpNorm<1>(); };
  o.subgradient = [](const Vec& x) { return Vec(5.0 * x.array().sign().matrix()); };
  o.lipschitz = 1.0;
  const auto domain = SimpleSetd::box(vec({-1, -1}), vec({1, 1}));
  const OracleReport report = validate_oracle(o, domain, 20);
  CHECK_FALSE(find(report, "subgradient_bound")->passed);
}

TEST_CASE("derived constants and conversions") {
  const SmoothOracle q = shifted_quadratic(vec({0, 0}), 2.0);
  CHECK(objective_strong_convexity(q) == 2.0);
  CHECK(objective_lipschitz(q) == q.lipschitz);
  const NonsmoothOracle n = as_nonsmooth(q);
  CHECK(n.value(vec({1, 1})) == 2.0);
  testutil::require_close(n.subgradient(vec({1, 1})), vec({2, 2}), 0);
  CHECK(oracle_kind(q) != oracle_kind(n));

  const auto domain = SimpleSetd::box(vec({-1, -1}), vec({1, 1}));
  const ConstantEstimates est = estimate_constants(q.value, q.gradient, domain);
  CHECK(est.gradient_lipschitz >= 2.0);
  CHECK(est.gradient_lipschitz <= 4.0 + 1e-9);
  CHECK(est.lipschitz <= 2.0 * 2.0 * std::sqrt(2.0) + 1e-9);
}

TEST_CASE("too few samples is a configuration error") {
  const auto domain = SimpleSetd::box(vec({-1}), vec({1}));
  CHECK_THROWS_AS(validate_oracle(shifted_quadratic(vec({0}), 2.0), domain, 5), ConfigError);
}
