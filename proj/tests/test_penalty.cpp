#include "exactpen/generators.hpp"
#include "exactpen/penalty.hpp"
#include "exactpen/problems.hpp"
#include "exactpen/refsolve.hpp"
#include "test_util.hpp"

using namespace exactpen;
using testutil::vec;

namespace {

std::vector<SimpleSetd> wedge_sets() {
  return {SimpleSetd::halfspace(vec({0.1, 1}), 1), SimpleSetd::halfspace(vec({0.1, -1}), 1)};
}

}  // namespace

TEST_CASE("h_P on the wedge geometry") {
  const PenaltyModeld l1(AbsoluteNormd::l1(), wedge_sets());
  const PenaltyModeld linf(AbsoluteNormd::linf(), wedge_sets());
  CHECK(eval_hP(l1, vec({0, 0})) == 0.0);
  CHECK(eval_hP(l1, vec({20, 0})) == doctest::Approx(2.0 / std::sqrt(1.01)).epsilon(1e-14));
  CHECK(eval_hP(l1, vec({20, 0})) == doctest::Approx(1.990074).epsilon(1e-6));
  CHECK(eval_hP(linf, vec({20, 0})) == doctest::Approx(1.0 / std::sqrt(1.01)).epsilon(1e-14));
}

TEST_CASE("subgradient of h_P") {
  const PenaltyModeld l1(AbsoluteNormd::l1(), wedge_sets());
  CHECK(subgrad_hP(l1, vec({1, 0})).norm() == 0.0);
  const Vec g = subgrad_hP(l1, vec({20, 0}));
  testutil::require_close(g, vec({0.2 / std::sqrt(1.01), 0}), 1e-14);
  CHECK(g.norm() <= AbsoluteNormd::l1().norm_of_ones(2));

  const auto ball = SimpleSetd::l2_ball(vec({0, 0}), 1.0);
  const PenaltyModeld single(AbsoluteNormd::l2(), {ball});
  const Vec x = vec({2, 2});
  testutil::require_close(subgrad_hP(single, x), (x - ball.project(x)).normalized(), 1e-15);
}

TEST_CASE("h_P Lipschitz and subgradient inequality for every norm") {
  Rng rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const Index m = 1 + static_cast<Index>(rng.below(3));
    const Vec anchor = rng.uniform_vector(3, -1, 1);
    std::vector<SimpleSetd> sets;
    for (Index i = 0; i < m; ++i) sets.push_back(random_set_containing(anchor, rng));
    const PenaltyModeld model(random_norm(m, rng), sets);
    const double P1 = model.norm.norm_of_ones(m);
    CHECK(eval_hP(model, anchor) <= 1e-12);
    for (int k = 0; k < 500; ++k) {
      const Vec x = rng.uniform_vector(3, -3, 3);
      const Vec y = rng.uniform_vector(3, -3, 3);
      CHECK(std::abs(eval_hP(model, x) - eval_hP(model, y)) <= P1 * (x - y).norm() + 1e-9);
      CHECK(eval_hP(model, y) >= eval_hP(model, x) + subgrad_hP(model, x).dot(y - x) - 1e-9);
    }
  }
}

TEST_CASE("min_valid_lambda") {
  const auto wedge = make_penalty_config(AbsoluteNormd::l1(), 2, 1.0, std::sqrt(2.0),
                                         wedge_upsilon(0.1));
  CHECK(*wedge.upsilon_P == doctest::Approx(10.0499).epsilon(1e-5));
  CHECK(min_valid_lambda(wedge) == doctest::Approx(2.0 * wedge_upsilon(0.1) * std::sqrt(2.0)));
  CHECK(min_valid_lambda(wedge) == doctest::Approx(28.4255).epsilon(1e-5));

  PenaltyConfig cfg;
  cfg.upsilon_P = 1.0;
  cfg.lipschitz = 1.0;
  CHECK(min_valid_lambda(cfg) == 2.0);
  cfg.upsilon_P = 0.5;
  cfg.lipschitz = 4.0;
  CHECK(min_valid_lambda(cfg) == 4.0);
  cfg.upsilon_P.reset();
  CHECK_THROWS_AS(min_valid_lambda(cfg), CapabilityError);
}

TEST_CASE("upsilon_P scales with the dual-ball shape factor") {
  const auto w = AbsoluteNormd::weighted_l1(vec({2, 0.5}));
  const auto cfg = make_penalty_config(w, 2, 1.0, 1.0, 3.0);
  CHECK(*cfg.upsilon_P == doctest::Approx(6.0));
  CHECK_FALSE(make_penalty_config(w, 2, 1.0, 1.0, std::nullopt).upsilon_P.has_value());
  CHECK_THROWS_AS(make_penalty_config(w, 2, -1.0, 1.0, 3.0), ConfigError);
  CHECK(ball_sandwich_upsilon(4.0, 2.0) == 2.0);
  CHECK_THROWS_AS(ball_sandwich_upsilon(1.0, 2.0), ConfigError);
}

TEST_CASE("feasibility certificate") {
  const PenaltyModeld model(AbsoluteNormd::l1(), {SimpleSetd::halfspace(vec({1, 0}), 0)});
  PenaltyConfig cfg;
  cfg.lipschitz = 2.0;
  cfg.upsilon_P = 4.0;
  const double eps = 0.01;

  const auto feasible = feasibility_certificate(model, cfg, vec({-1, 3}), eps);
  CHECK(feasible.h_p == 0.0);
  CHECK(*feasible.distance_bound == 0.0);
  CHECK(feasible.passed);

  // h_P = eps / (upsilon_P L_f) puts the bound exactly on eps / L_f.
  const double h = eps / (*cfg.upsilon_P * cfg.lipschitz);
  const auto edge = feasibility_certificate(model, cfg, vec({h, 0}), eps);
  CHECK(*edge.distance_bound == doctest::Approx(eps / cfg.lipschitz).epsilon(1e-14));
  CHECK(edge.passed);
  CHECK_FALSE(feasibility_certificate(model, cfg, vec({2 * h, 0}), eps).passed);
  CHECK_THROWS_AS(feasibility_certificate(model, cfg, vec({0, 0}), 0.0), InputError);
}

TEST_CASE("regularity sandwich with known upsilon") {
  Rng rng(4);
  for (double slope : {0.1, 1.0}) {
    WedgeOptions w;
    w.slope = slope;
    const ProblemInstance wedge = wedge_testbed(w);
    for (int k = 0; k < 200; ++k) {
      const Vec x = sample_point(wedge.domain, rng);
      CHECK(distance_to_intersection(wedge.penalty.sets, x) <=
            *wedge.cfg.upsilon_P * wedge.penalty_value(x) + 1e-6);
    }
  }
}
