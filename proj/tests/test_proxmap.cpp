#include "exactpen/generators.hpp"
#include "exactpen/proxmap.hpp"
#include "exactpen/refsolve.hpp"
#include "test_util.hpp"

using namespace exactpen;
using testutil::vec;

namespace {

SimpleSetd point_set(const Vec& c) { return SimpleSetd::box(c, c); }

DualBlockd column(const Vec& v) { return DualBlockd(v); }

/// Projected gradient on (1/(2 gamma)) ||Y - Y'||^2 + sum sigma_{C_i}(y'_i) over Y^lambda_P
/// when every support function is linear (singleton sets), so the iteration is exact.
DualBlockd projected_gradient(const PenaltyModeld& model, double lambda, double gamma,
                              const DualBlockd& Y) {
  DualBlockd c(Y.rows(), Y.cols());
  for (Index i = 0; i < model.m(); ++i) c.col(i) = model.sets[i].support_point(Vec::Zero(Y.rows()));
  DualBlockd cur = DualBlockd::Zero(Y.rows(), Y.cols());
  for (int k = 0; k < 100000; ++k) {
    const DualBlockd grad = (cur - Y) / gamma + c;
    const DualBlockd next = project_Y(model.norm, lambda, DualBlockd(cur - gamma * grad));
    const double change = (next - cur).norm();
    cur = next;
    if (change <= 1e-14) break;
  }
  return cur;
}

}  // namespace

TEST_CASE("prox of a zero set is the dual-ball projection") {
  const PenaltyModeld model(AbsoluteNormd::l2(), {point_set(vec({0, 0}))});
  const DualBlockd Y = column(vec({3, 4}));
  const DualBlockd out = prox_g(model, 1.0, 1.0, Y);
  testutil::require_close(out.col(0), vec({0.6, 0.8}), 1e-15);
  testutil::require_close(projected_gradient(model, 1.0, 1.0, Y).col(0), out.col(0), 1e-10);
}

TEST_CASE("prox fixed point for small blocks and zero sets") {
  const PenaltyModeld model(AbsoluteNormd::l1(), {point_set(vec({0, 0})), point_set(vec({0, 0}))});
  DualBlockd Y(2, 2);
  Y << 0.1, -0.2, 0.3, 0.05;
  CHECK((prox_g(model, 1.0, 0.7, Y) - Y).norm() == 0.0);
}

TEST_CASE("prox over singletons matches exact projected gradient") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 1 + static_cast<Index>(rng.below(3));
    std::vector<SimpleSetd> sets;
    for (Index i = 0; i < m; ++i) sets.push_back(point_set(rng.normal_vector(3)));
    const PenaltyModeld model(random_norm(m, rng), sets);
    const double lambda = rng.uniform(0.5, 3.0);
    const double gamma = rng.uniform(0.2, 2.0);
    const DualBlockd Y = 3.0 * DualBlockd::Random(3, m);
    CAPTURE(model.norm.to_string());
    CHECK((prox_g(model, lambda, gamma, Y) - projected_gradient(model, lambda, gamma, Y)).norm() <=
          1e-8);
  }
}

TEST_CASE("prox beats random feasible blocks on two unit boxes") {
  Rng rng(8);
  const auto box = SimpleSetd::box(Vec::Zero(3), Vec::Ones(3));
  const PenaltyModeld model(AbsoluteNormd::l1(), {box, box});
  const double lambda = 2.0, gamma = 0.5;
  for (int trial = 0; trial < 5; ++trial) {
    const DualBlockd Y = 4.0 * DualBlockd::Random(3, 2);
    const DualBlockd out = prox_g(model, lambda, gamma, Y);
    CHECK(in_dual_set(model.norm, lambda, out, 1e-10));
    const double best = prox_objective(model, gamma, Y, out);
    for (int k = 0; k < 1000; ++k) {
      const DualBlockd cand = random_dual_block(model.norm, lambda, 3, 2, rng);
      CHECK(best <= prox_objective(model, gamma, Y, cand) + 1e-12);
    }
  }
}

TEST_CASE("prox agrees with the subgradient reference on general sets") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec anchor = rng.uniform_vector(3, -1, 1);
    std::vector<SimpleSetd> sets;
    while (sets.size() < 2) {
      const SimpleSetd s = random_set_containing(anchor, rng);
      if (s.has_support_function()) sets.push_back(s);
    }
    const PenaltyModeld model(random_norm(2, rng), sets);
    const DualBlockd Y = 2.0 * DualBlockd::Random(3, 2);
    const DualBlockd out = prox_g(model, 1.5, 0.8, Y);
    const DualBlockd ref = prox_reference(model, 1.5, 0.8, Y, 20000);
    CHECK(prox_objective(model, 0.8, Y, out) <= prox_objective(model, 0.8, Y, ref) + 1e-8);
  }
}

TEST_CASE("prox input errors") {
  const PenaltyModeld model(AbsoluteNormd::l2(), {point_set(vec({0, 0}))});
  CHECK_THROWS_AS(prox_g(model, 1.0, 0.0, column(vec({1, 1}))), InputError);
  CHECK_THROWS_AS(prox_g(model, 1.0, -1.0, column(vec({1, 1}))), InputError);
  CHECK_THROWS_AS(prox_g(model, 1.0, 1.0, DualBlockd::Zero(3, 1)), ConfigError);
}

TEST_CASE("project_Y examples") {
  const auto l2 = AbsoluteNormd::l2();
  testutil::require_close(project_Y(l2, 1.0, column(vec({0, 2}))).col(0), vec({0, 1}), 1e-15);
  const DualBlockd small = column(vec({0.1, 0.2}));
  CHECK((project_Y(l2, 1.0, small) - small).norm() == 0.0);

  DualBlockd Y(2, 2);
  Y.col(0) = vec({0, 3});
  Y.col(1) = vec({0.3, 0.4});
  const auto l1 = AbsoluteNormd::l1();
  const DualBlockd out = project_Y(l1, 1.0, Y);
  testutil::require_close(block_norms(out), vec({1, 0.5}), 1e-15);
  testutil::require_close(out.col(0), vec({0, 1}), 1e-15);
  testutil::require_close(out.col(1), Y.col(1), 1e-15);
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const DualBlockd c = random_dual_block(l1, 1.0, 2, 2, rng);
    CHECK((Y - out).norm() <= (Y - c).norm() + 1e-12);
  }
}

TEST_CASE("g_subgradient_point") {
  const Vec c1 = vec({1, 2}), c2 = vec({-1, 0});
  const PenaltyModeld singletons(AbsoluteNormd::l1(), {point_set(c1), point_set(c2)});
  const DualBlockd Y = DualBlockd::Random(2, 2) * 10.0;
  const DualBlockd g = g_subgradient_point(singletons, 0.3, Y);
  testutil::require_close(g.col(0), c1, 0);
  testutil::require_close(g.col(1), c2, 0);

  const PenaltyModeld boxed(AbsoluteNormd::l2(), {SimpleSetd::box(Vec::Zero(2), Vec::Ones(2))});
  testutil::require_close(g_subgradient_point(boxed, 2.0, column(vec({1, 0.5}))).col(0),
                          vec({0.5, 0.25}), 0);

  Rng rng(6);
  for (int k = 0; k < 20; ++k) {
    std::vector<SimpleSetd> sets = {random_set(SetKind::L1Ball, 3, rng), random_set(SetKind::Simplex, 3, rng)};
    const PenaltyModeld model(AbsoluteNormd::linf(), sets);
    const DualBlockd P = g_subgradient_point(model, rng.uniform(0.1, 2), DualBlockd(3 * DualBlockd::Random(3, 2)));
    for (Index i = 0; i < 2; ++i) CHECK(sets[i].residual(P.col(i)) <= 1e-12);
  }
}

TEST_CASE("replicate and block_sum") {
  const DualBlockd R = replicate(vec({1, 2}), 3);
  CHECK(R.cols() == 3);
  for (Index i = 0; i < 3; ++i) testutil::require_close(R.col(i), vec({1, 2}), 0);
  testutil::require_close(block_sum(R), vec({3, 6}), 0);
  CHECK(block_sum(DualBlockd::Zero(4, 2)).norm() == 0.0);
}
