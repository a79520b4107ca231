#include "exactpen/problems.hpp"
#include "exactpen/refsolve.hpp"
#include "exactpen/sampling.hpp"
#include "exactpen/solvers.hpp"
#include "test_util.hpp"

using namespace exactpen;
using testutil::vec;

TEST_CASE("counter example 1 values") {
  CHECK(ce1_penalized(vec({10, 0}), 4.0) == doctest::Approx(-10.0).epsilon(1e-15));
  CHECK(std::abs(ce1_penalized(vec({20, 0}), 4.0) - (-20.0 + 8.0 / std::sqrt(1.01))) <= 1e-12);
  CHECK(std::abs(ce1_penalized(vec({20, 0}), 4.0) - (-12.0397025)) <= 1e-7);
  const Ce1Report r = check_counter_example_1();
  CHECK(r.passed);
  CHECK(r.at_20 < r.at_10);

  const ProblemInstance ce1 = counter_example_1();
  CHECK(ce1.cfg.lipschitz == doctest::Approx(std::sqrt(2.0)));
  CHECK(ce1.domain.contains(vec({100, -100}), 0));
  CHECK_FALSE(ce1.domain.contains(vec({101, 0}), 0));
  CHECK(ce1.objective(vec({1, 2})) == -3.0);
}

TEST_CASE("counter example 2 values") {
  const Ce2Report r = check_counter_example_2();
  REQUIRE(r.entries.size() == 3);
  const double expected[] = {-1.0, -0.1, -0.01};
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(r.entries[k].value - expected[k]) <= 1e-12);
    CHECK(r.entries[k].below_origin);
  }
  CHECK(r.at_origin == 0.0);
  CHECK(r.passed);
}

TEST_CASE("parabola epigraph projection against brute force") {
  CHECK(parabola_epigraph_distance(1.0, 1.0) == 0.0);
  CHECK(parabola_epigraph_distance(0.0, 5.0) == 0.0);
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    const double x = rng.uniform(-2, 2), y = rng.uniform(-2, 1);
    if (y >= x * x) continue;
    const Vec p = project_parabola_epigraph(x, y);
    CHECK(std::abs(p(1) - p(0) * p(0)) <= 1e-10);
    // Closest boundary point over a fine grid of the abscissa.
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 400000; ++i) {
      const double u = -3.0 + 6.0 * i / 400000.0;
      best = std::min(best, std::hypot(u - x, u * u - y));
    }
    CHECK(parabola_epigraph_distance(x, y) <= best + 1e-12);
    CHECK(parabola_epigraph_distance(x, y) >= best - 1e-4);
  }
}

TEST_CASE("wedge upsilon") {
  CHECK(wedge_upsilon(0.1) == doctest::Approx(10.049876).epsilon(1e-7));
  CHECK(wedge_upsilon(1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(wedge_upsilon(0.0), ConfigError);
}

TEST_CASE("wedge regularity on 500 random points") {
  Rng rng(14);
  for (double s : {0.1, 1.0}) {
    WedgeOptions w;
    w.slope = s;
    const ProblemInstance wedge = wedge_testbed(w);
    const Vec apex = vec({1.0 / s, 0});
    CHECK(wedge.penalty_value(apex) == 0.0);
    for (int k = 0; k < 500; ++k) {
      const Vec x = apex + rng.uniform_vector(2, -3, 3);
      const double dmax = std::max(distance(wedge.penalty.sets[0], x), distance(wedge.penalty.sets[1], x));
      CHECK(distance_to_intersection(wedge.penalty.sets, x) <= wedge_upsilon(s) * dmax + 1e-6);
    }
  }
}

TEST_CASE("wedge objectives are minimised at the apex") {
  WedgeOptions w;
  w.objective = WedgeObjective::Linear;
  const ProblemInstance lin = wedge_testbed(w);
  CHECK(lin.lambda() == doctest::Approx(2 * wedge_upsilon(0.1) * std::sqrt(2.0)));
  REQUIRE(lin.known_minimizer.has_value());
  testutil::require_close(*lin.known_minimizer, vec({10, 0}), 0);
  CHECK_THROWS_AS(wedge_testbed(WedgeOptions{.slope = -1.0}), ConfigError);
}

TEST_CASE("graph matching instance") {
  GraphMatchingOptions o;
  o.mode = GraphMode::Identical;
  const ProblemInstance gm = graph_matching(o);
  CHECK(gm.dim() == 100);
  CHECK(gm.m() == 2);
  const Vec identity = Eigen::Map<const Vec>(Mat::Identity(10, 10).eval().data(), 100);
  CHECK(gm.objective(identity) == 0.0);
  const Vec uniform = Vec::Constant(100, 0.1);
  CHECK(gm.penalty_value(uniform) <= 1e-12);
  CHECK(gm.diameter() == doctest::Approx(10.0));

  const GraphPair pair = erdos_renyi_pair(10, 1, GraphMode::Random, 0.3);
  CHECK((pair.A - pair.A.transpose()).norm() == 0.0);
  CHECK(pair.A.diagonal().norm() == 0.0);
  CHECK((pair.A.array() * (pair.A.array() - 1)).abs().sum() == 0.0);
  const GraphPair same = erdos_renyi_pair(10, 1, GraphMode::Identical, 0.3);
  CHECK((same.A - same.B).norm() == 0.0);
  CHECK(power_iteration_norm(pair.A) <=
        Eigen::JacobiSVD<Mat>(pair.A).singularValues()(0) * (1 + 1e-9));
  CHECK(power_iteration_norm(pair.A) >=
        Eigen::JacobiSVD<Mat>(pair.A).singularValues()(0) * 0.99);

  GraphMatchingOptions bad;
  bad.n = 1;
  CHECK_THROWS_AS(graph_matching(bad), ConfigError);
  bad.n = 201;
  CHECK_THROWS_AS(graph_matching(bad), ConfigError);
}

TEST_CASE("graph matching gradient matches finite differences at random points") {
  const ProblemInstance gm = graph_matching({});
  const auto& o = std::get<SmoothOracle>(gm.oracle);
  Rng rng(2);
  for (int k = 0; k < 5; ++k) {
    const Vec x = rng.uniform_vector(100, 0, 1);
    const Vec g = o.gradient(x);
    Vec fd(100);
    for (Index i = 0; i < 100; ++i) {
      Vec e = Vec::Zero(100);
      e(i) = 1e-5;
      fd(i) = (o.value(x + e) - o.value(x - e)) / 2e-5;
    }
    CHECK((fd - g).norm() <= 1e-5 * g.norm());
  }
}

TEST_CASE("feasibility toys") {
  for (ToyKind kind : {ToyKind::Balls, ToyKind::Boxes, ToyKind::Halfspaces, ToyKind::Mixed}) {
    const ProblemInstance toy = feasibility_toy(kind, 3, 4, 7);
    REQUIRE(toy.anchor.has_value());
    CHECK(toy.penalty_value(*toy.anchor) <= 1e-12);
    CHECK(toy.objective(*toy.anchor) == 0.0);
    CHECK(toy_kind_from_string(to_string(kind)) == kind);
  }
  const ProblemInstance single = feasibility_toy(ToyKind::Balls, 3, 1, 2);
  const Vec p = single.penalty.sets[0].project(single.initial_point);
  CHECK(single.penalty_value(p) <= 1e-12);

  const ProblemInstance toy = feasibility_toy(ToyKind::Balls, 3, 3, 5);
  SolverParams params;
  params.iterations = 100000;
  params.record_trace = false;
  const RunTrace t = sps(toy, params);
  CHECK(toy.penalty_value(t.x_hat) <= 1e-4);
  CHECK_THROWS_AS(feasibility_toy(ToyKind::Balls, 0, 1, 1), ConfigError);
}

TEST_CASE("two boxes and the piecewise linear toy") {
  const ProblemInstance tb = two_box_quadratic({});
  CHECK(*tb.cfg.upsilon == doctest::Approx(std::sqrt(2.0)));
  CHECK(tb.penalty_value(vec({0.75, 0.75})) == 0.0);
  const ProblemInstance pl = piecewise_linear_toy({});
  const auto& saddle = std::get<SaddleOracle>(pl.oracle);
  Rng rng(1);
  // A linear function of z peaks at a vertex of the simplex Z.
  const Index q = saddle.z_set.dim();
  for (int k = 0; k < 20; ++k) {
    const Vec x = sample_point(pl.domain, rng);
    double best = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < q; ++i) best = std::max(best, saddle.value(x, Vec::Unit(q, i)));
    CHECK(std::abs(saddle.primal_value(x) - best) <= 1e-12);
    for (int j = 0; j < 200; ++j) CHECK(saddle.value(x, sample_point(saddle.z_set, rng)) <= best + 1e-12);
  }
}

TEST_CASE("make_problem") {
  ParamMap p{{"n", 6.0}, {"seed", 3.0}, {"mode", std::string("identical")}};
  const ProblemInstance gm = make_problem("graph_matching", p);
  CHECK(gm.dim() == 36);
  CHECK_FALSE(gm.fingerprint.empty());
  CHECK(make_problem("wedge", {{"slope", 1.0}}).penalty.sets.size() == 2);
  for (const auto& name : problem_names()) CHECK_NOTHROW(make_problem(name, {}));

  auto message = [](const std::string& name, const ParamMap& params) {
    try {
      make_problem(name, params);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("graph_matching", {{"colour", 1.0}}).find("problem.colour") != std::string::npos);
  CHECK(message("graph_matching", {{"n", 2.5}}).find("problem.n") != std::string::npos);
  CHECK(message("graph_matching", {{"mode", std::string("other")}}).find("problem.mode") !=
        std::string::npos);
  CHECK(message("nope", {}).find("problem.name") != std::string::npos);
}
