#include "exactpen/problems.hpp"
#include "exactpen/refsolve.hpp"
#include "test_util.hpp"

#include <cstdlib>
#include <filesystem>

using namespace exactpen;
using testutil::vec;

TEST_CASE("distance to intersection") {
  const std::vector<SimpleSetd> planes = {SimpleSetd::hyperplane(vec({1, 0}), 0),
                                         SimpleSetd::hyperplane(vec({0, 1}), 0)};
  CHECK(distance_to_intersection(planes, vec({3, 4})) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(distance_to_intersection(planes, vec({0, 0})) == 0.0);
  const std::vector<SimpleSetd> wedge = {SimpleSetd::halfspace(vec({0.1, 1}), 1),
                                        SimpleSetd::halfspace(vec({0.1, -1}), 1)};
  CHECK(distance_to_intersection(wedge, vec({1, 0})) == 0.0);
  CHECK(distance_to_intersection(wedge, vec({20, 0})) == doctest::Approx(10.0).epsilon(1e-7));
}

TEST_CASE("reference on a single box matches the clamped minimizer") {
  SmoothOracle o;
  const Vec c = vec({2, -1, 0.3});
  o.value = [c](const Vec& x) { return (x - c).squaredNorm(); };
  o.gradient = [c](const Vec& x) { return Vec(2.0 * (x - c)); };
  o.gradient_lipschitz = 2.0;
  o.strong_convexity = 2.0;
  o.lipschitz = 8.0;
  const auto box = SimpleSetd::box(Vec::Zero(3), Vec::Ones(3));
  const PenaltyModeld model(AbsoluteNormd::l2(), {box});
  const ProblemInstance inst("box", box, model, make_penalty_config(model.norm, 1, 20.0, 8.0, 1.0),
                             o, Vec::Constant(3, 0.5));
  for (ReferenceMethod method : {ReferenceMethod::Sps, ReferenceMethod::Eppd}) {
    const ReferenceSolution r = reference_optimum(inst, 100000, method);
    CHECK((r.point - vec({1, 0, 0.3})).norm() <= 1e-6);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("reference on counter example 1 finds the apex") {
  const ReferenceSolution r = reference_optimum(counter_example_1(28.43), 1000000);
  CHECK((r.point - vec({10, 0})).norm() <= 1e-2);
  CHECK(std::abs(r.value - (-10.0)) <= 1e-2);
}

TEST_CASE("reference on identical graph matching is zero") {
  GraphMatchingOptions o;
  o.n = 6;
  o.mode = GraphMode::Identical;
  const ReferenceSolution r = reference_optimum(graph_matching(o), 100000, ReferenceMethod::Eppd);
  CHECK(std::abs(r.value) <= 1e-3);
}

TEST_CASE("reference cache round-trip and budget validation") {
  const char* saved = std::getenv("EXACTPEN_CACHE_DIR");
  const std::string previous = saved ? saved : "";
  const auto fresh = std::filesystem::temp_directory_path() / "exactpen_cache_roundtrip";
  std::filesystem::remove_all(fresh);
  ::setenv("EXACTPEN_CACHE_DIR", fresh.c_str(), 1);
  CHECK(reference_cache_dir() == fresh);

  ProblemInstance inst = two_box_quadratic({});
  inst.fingerprint = "test-cache-two-box";
  const auto key = reference_key(inst, 100000, ReferenceMethod::Sps);
  const ReferenceSolution first = reference_optimum(inst, 100000);
  const ReferenceSolution second = reference_optimum(inst, 100000);
  CHECK_FALSE(first.from_cache);
  CHECK(second.from_cache);
  CHECK(first.value == second.value);
  CHECK((first.point - second.point).norm() == 0.0);
  CHECK(reference_key(inst, 100000, ReferenceMethod::Eppd) != key);
  CHECK(reference_key(inst.with_lambda(2 * inst.lambda()), 100000, ReferenceMethod::Sps) != key);

  inst.fingerprint.clear();
  CHECK_FALSE(reference_optimum(inst, 100000).from_cache);
  CHECK_THROWS_AS(reference_optimum(inst, 1000), ConfigError);

  std::filesystem::remove_all(fresh);
  if (saved) {
    ::setenv("EXACTPEN_CACHE_DIR", previous.c_str(), 1);
  } else {
    ::unsetenv("EXACTPEN_CACHE_DIR");
  }
}

TEST_CASE("prox reference") {
  const PenaltyModeld model(AbsoluteNormd::l2(), {SimpleSetd::box(Vec::Zero(2), Vec::Ones(2))});
  DualBlockd Y(2, 1);
  Y << 3, -1;
  const DualBlockd ref = prox_reference(model, 1.0, 0.5, Y, 5000);
  CHECK(in_dual_set(model.norm, 1.0, ref, 1e-10));
  const PenaltyModeld half(AbsoluteNormd::l2(), {SimpleSetd::halfspace(vec({1, 0}), 0)});
  CHECK_THROWS_AS(prox_reference(half, 1.0, 0.5, Y, 10), CapabilityError);
}
