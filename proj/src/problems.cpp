#include "exactpen/problems.hpp"

#include "exactpen/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace exactpen {

namespace {

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(const Vec& v) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v(i));
  }
  return out + "]";
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

/// Largest distance from c to a corner of the box [lo, hi].
double max_corner_distance(const Vec& c, const Vec& lo, const Vec& hi) {
  return (c - lo).cwiseAbs().cwiseMax((hi - c).cwiseAbs()).norm();
}

SmoothOracle quadratic_oracle(const Vec& center, double lipschitz) {
  SmoothOracle o;
  o.value = [center](const Vec& x) { return (x - center).squaredNorm(); };
  o.gradient = [center](const Vec& x) { return Vec(2.0 * (x - center)); };
  o.gradient_lipschitz = 2.0;
  o.strong_convexity = 2.0;
  o.lipschitz = lipschitz;
  return o;
}

SmoothOracle zero_oracle() {
  SmoothOracle o;
  o.value = [](const Vec&) { return 0.0; };
  o.gradient = [](const Vec& x) { return Vec(Vec::Zero(x.size())); };
  o.gradient_lipschitz = 0.0;
  o.lipschitz = 1.0;
  return o;
}

}  // namespace

double wedge_upsilon(double slope) {
  if (!(slope > 0)) throw ConfigError("wedge: slope must be positive");
  return 1.0 / std::sin(std::atan(slope));
}

ProblemInstance counter_example_1(double lambda) {
  const auto norm = AbsoluteNormd::l1();
  std::vector<SimpleSetd> sets{SimpleSetd::halfspace(vec2(0.1, 1.0), 1.0),
                               SimpleSetd::halfspace(vec2(0.1, -1.0), 1.0)};
  const double lipschitz = std::sqrt(2.0);
  SmoothOracle o;
  o.value = [](const Vec& x) { return -x(0) - x(1); };
  o.gradient = [](const Vec&) { return vec2(-1.0, -1.0); };
  o.gradient_lipschitz = 0.0;
  o.lipschitz = lipschitz;
  ProblemInstance inst("counter_example_1",
                       SimpleSetd::box(vec2(-100, -100), vec2(100, 100)),
                       PenaltyModeld(norm, sets),
                       make_penalty_config(norm, 2, lambda, lipschitz, wedge_upsilon(0.1)),
                       as_nonsmooth(o), vec2(0, 0));
  inst.fingerprint = "counter_example_1";
  inst.objective_floor = -10.5;
  inst.known_minimizer = vec2(10, 0);
  inst.known_optimum = -10.0;
  inst.anchor = vec2(10, 0);
  return inst;
}

double ce1_penalized(const Vec& point, double gamma) {
  require_dim(point.size(), 2, "ce1_penalized");
  const double x = point(0);
  const double y = point(1);
  const double scale = std::sqrt(1.01);
  return -x - y + gamma * (std::max(0.0, 0.1 * x + y - 1.0) + std::max(0.0, 0.1 * x - y - 1.0)) /
                      scale;
}

Ce1Report check_counter_example_1(double gamma) {
  Ce1Report r;
  r.gamma = gamma;
  r.at_10 = ce1_penalized(vec2(10, 0), gamma);
  r.at_20 = ce1_penalized(vec2(20, 0), gamma);
  r.passed = r.at_20 < r.at_10;
  return r;
}

Vec project_parabola_epigraph(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw InputError("parabola: non-finite point");
  if (y >= x * x) return vec2(x, y);
  // The nearest point (u, u^2) has u between 0 and x and solves
  // 2u^3 + (1 - 2y)u - x = 0. Scan [0, |x|] for sign changes and polish each
  // bracket with Newton steps, falling back to bisection outside the bracket.
  const double sign = x < 0 ? -1.0 : 1.0;
  const double ax = std::abs(x);
  auto g = [&](double u) { return 2.0 * u * u * u + (1.0 - 2.0 * y) * u - ax; };
  auto dg = [&](double u) { return 6.0 * u * u + 1.0 - 2.0 * y; };
  auto phi = [&](double u) { return (u - ax) * (u - ax) + (u * u - y) * (u * u - y); };
  if (ax == 0.0) return vec2(0.0, 0.0);
  double best_u = 0.0;
  double best_phi = phi(0.0);
  constexpr int kCells = 64;
  for (int k = 0; k < kCells; ++k) {
    double lo = ax * k / kCells;
    double hi = ax * (k + 1) / kCells;
    if (g(lo) > 0 || g(hi) < 0) continue;
    double u = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
      const double gu = g(u);
      if (gu == 0) break;
      if (gu < 0) {
        lo = u;
      } else {
        hi = u;
      }
      const double d = dg(u);
      double next = d != 0 ? u - gu / d : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - u) <= 1e-17 * std::max(1.0, std::abs(u))) {
        u = next;
        break;
      }
      u = next;
    }
    if (phi(u) < best_phi) {
      best_phi = phi(u);
      best_u = u;
    }
  }
  if (phi(ax) < best_phi) best_u = ax;
  return vec2(sign * best_u, best_u * best_u);
}

double parabola_epigraph_distance(double x, double y) {
  if (y >= x * x) return 0.0;
  return (project_parabola_epigraph(x, y) - vec2(x, y)).norm();
}

Ce2Report check_counter_example_2(const std::vector<double>& gammas) {
  auto F = [](double x, double y, double gamma) {
    return -2.0 * x + gamma * (parabola_epigraph_distance(x, y) + std::abs(y));
  };
  Ce2Report r;
  r.at_origin = F(0.0, 0.0, 1.0);
  r.passed = !gammas.empty();
  for (double gamma : gammas) {
    if (!(gamma > 0)) throw InputError("counter_example_2: gamma must be positive");
    Ce2Entry e;
    e.gamma = gamma;
    e.value = F(1.0 / gamma, 1.0 / (gamma * gamma), gamma);
    e.expected = -1.0 / gamma;
    e.below_origin = e.value < r.at_origin;
    r.passed = r.passed && e.below_origin && std::abs(e.value - e.expected) <= 1e-12;
    r.entries.push_back(e);
  }
  return r;
}

ProblemInstance wedge_testbed(const WedgeOptions& options) {
  const double s = options.slope;
  const double upsilon = wedge_upsilon(s);
  const Vec apex = vec2(1.0 / s, 0.0);
  const Vec lo = options.lo.value_or(Vec(apex - vec2(2, 2)));
  const Vec hi = options.hi.value_or(Vec(apex + vec2(2, 2)));
  const auto norm = AbsoluteNormd::parse(options.norm);
  std::vector<SimpleSetd> sets{SimpleSetd::halfspace(vec2(s, 1.0), 1.0),
                               SimpleSetd::halfspace(vec2(s, -1.0), 1.0)};
  const SimpleSetd domain = SimpleSetd::box(lo, hi);
  if (!domain.contains(apex, 1e-12)) throw ConfigError("wedge: box must contain the apex");

  SmoothOracle oracle;
  std::string fingerprint = "wedge;slope=" + fmt(s) + ";norm=" + norm.to_string() +
                            ";lo=" + fmt(lo) + ";hi=" + fmt(hi);
  std::optional<Vec> minimizer;
  std::optional<double> optimum;
  if (options.objective == WedgeObjective::Linear) {
    oracle.value = [](const Vec& x) { return -x(0) - x(1); };
    oracle.gradient = [](const Vec&) { return vec2(-1.0, -1.0); };
    oracle.gradient_lipschitz = 0.0;
    oracle.lipschitz = std::sqrt(2.0);
    fingerprint += ";objective=linear";
    minimizer = apex;
    optimum = -apex(0);
  } else {
    const Vec c = options.center.value_or(Vec(apex + vec2(1, 1)));
    require_dim(c.size(), 2, "wedge center");
    oracle = quadratic_oracle(c, 2.0 * max_corner_distance(c, lo, hi));
    fingerprint += ";objective=quadratic;center=" + fmt(c);
    // The apex is optimal exactly when c - apex lies in the normal cone
    // spanned by (s, 1) and (s, -1), i.e. when |c_y| <= (c_x - 1/s) / s.
    const Vec d = c - apex;
    if (d(0) >= 0 && std::abs(d(1)) <= d(0) / s) {
      minimizer = apex;
      optimum = d.squaredNorm();
    }
  }
  auto probe = make_penalty_config(norm, 2, 1.0, oracle.lipschitz, upsilon);
  const double lambda = options.lambda.value_or(min_valid_lambda(probe));
  fingerprint += ";lambda=" + fmt(lambda);
  ProblemInstance inst("wedge", domain, PenaltyModeld(norm, sets),
                       make_penalty_config(norm, 2, lambda, oracle.lipschitz, upsilon),
                       oracle, Vec(0.5 * (lo + hi)));
  inst.fingerprint = fingerprint;
  inst.known_minimizer = minimizer;
  inst.known_optimum = optimum;
  inst.anchor = apex;
  return inst;
}

GraphPair erdos_renyi_pair(int n, std::uint64_t seed, GraphMode mode, double p) {
  Rng rng(seed);
  auto draw = [&]() {
    Mat A = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.uniform() < p) A(i, j) = A(j, i) = 1.0;
      }
    }
    return A;
  };
  GraphPair g;
  g.A = draw();
  g.B = mode == GraphMode::Identical ? g.A : draw();
  return g;
}

double power_iteration_norm(const Mat& A, int steps) {
  if (A.size() == 0) return 0.0;
  Vec v = Vec::Ones(A.cols()) / std::sqrt(static_cast<double>(A.cols()));
  double sigma = 0.0;
  for (int k = 0; k < steps; ++k) {
    const Vec w = A.transpose() * (A * v);
    const double norm = w.norm();
    if (norm == 0) return 0.0;
    sigma = std::sqrt(norm);
    v = w / norm;
  }
  return sigma;
}

ProblemInstance graph_matching(const GraphMatchingOptions& options) {
  const int n = options.n;
  if (n < 2 || n > 200) throw ConfigError("graph_matching: n must be in [2, 200]");
  if (!(options.edge_probability >= 0 && options.edge_probability <= 1)) {
    throw ConfigError("graph_matching: edge_probability must be in [0, 1]");
  }
  const auto pair = erdos_renyi_pair(n, options.seed, options.mode, options.edge_probability);
  const Mat A = pair.A;
  const Mat B = pair.B;
  const Index dim = static_cast<Index>(n) * n;

  SmoothOracle oracle;
  oracle.value = [A, B, n](const Vec& x) {
    Eigen::Map<const Mat> P(x.data(), n, n);
    return (A * P - P * B).squaredNorm();
  };
  oracle.gradient = [A, B, n, dim](const Vec& x) {
    Eigen::Map<const Mat> P(x.data(), n, n);
    const Mat R = A * P - P * B;
    const Mat G = 2.0 * (A.transpose() * R - R * B.transpose());
    return Vec(Eigen::Map<const Vec>(G.data(), dim));
  };
  const double spectral = power_iteration_norm(A) + power_iteration_norm(B);
  oracle.gradient_lipschitz = 2.0 * spectral * spectral * 1.05;
  oracle.gradient_lipschitz_estimated = true;

  const SimpleSetd domain = SimpleSetd::box(Vec::Zero(dim), Vec::Ones(dim));
  const auto est = estimate_constants(oracle.value, oracle.gradient, domain, 500, options.seed);
  oracle.lipschitz = est.lipschitz;
  oracle.lipschitz_estimated = true;

  const auto norm = AbsoluteNormd::parse(options.norm);
  std::vector<SimpleSetd> sets{SimpleSetd::simplex_product(n, n, ProductAxis::Rows),
                               SimpleSetd::simplex_product(n, n, ProductAxis::Cols)};
  auto cfg = make_penalty_config(norm, 2, options.lambda, oracle.lipschitz, std::nullopt, true);
  const Vec uniform = Vec::Constant(dim, 1.0 / n);
  ProblemInstance inst("graph_matching", domain, PenaltyModeld(norm, sets), cfg, oracle, uniform);
  inst.fingerprint = "graph_matching;n=" + std::to_string(n) +
                     ";seed=" + std::to_string(options.seed) +
                     ";mode=" + (options.mode == GraphMode::Identical ? "identical" : "random") +
                     ";p=" + fmt(options.edge_probability) + ";norm=" + norm.to_string() +
                     ";lambda=" + fmt(options.lambda);
  inst.anchor = uniform;
  if (options.mode == GraphMode::Identical) {
    Mat I = Mat::Identity(n, n);
    inst.known_minimizer = Vec(Eigen::Map<const Vec>(I.data(), dim));
    inst.known_optimum = 0.0;
  }
  return inst;
}

std::string to_string(ToyKind kind) {
  switch (kind) {
    case ToyKind::Balls: return "balls";
    case ToyKind::Boxes: return "boxes";
    case ToyKind::Halfspaces: return "halfspaces";
    case ToyKind::Mixed: return "mixed";
  }
  return "?";
}

ToyKind toy_kind_from_string(const std::string& tag) {
  for (ToyKind k : {ToyKind::Balls, ToyKind::Boxes, ToyKind::Halfspaces, ToyKind::Mixed}) {
    if (to_string(k) == tag) return k;
  }
  throw ConfigError("feasibility_toy: unknown kind '" + tag + "'");
}

ProblemInstance feasibility_toy(ToyKind kind, int n, int m, std::uint64_t seed, double lambda) {
  if (n < 1) throw ConfigError("feasibility_toy: n must be >= 1");
  if (m < 1) throw ConfigError("feasibility_toy: m must be >= 1");
  Rng rng(seed);
  const Vec anchor = rng.uniform_vector(n, -1.0, 1.0);
  std::vector<SimpleSetd> sets;
  for (int i = 0; i < m; ++i) {
    ToyKind k = kind;
    if (kind == ToyKind::Mixed) k = static_cast<ToyKind>(i % 3);
    switch (k) {
      case ToyKind::Balls: {
        const double radius = rng.uniform(0.5, 1.5);
        const Vec center = anchor + radius * rng.uniform(0.0, 0.9) * rng.unit_vector(n);
        if (kind == ToyKind::Mixed && i % 2 == 1) {
          sets.push_back(SimpleSetd::l1_ball(center, radius));
          if (!sets.back().contains(anchor, 1e-12)) {
            sets.back() = SimpleSetd::l1_ball(center, (anchor - center).lpNorm<1>() + radius);
          }
        } else {
          sets.push_back(SimpleSetd::l2_ball(center, radius));
        }
        break;
      }
      case ToyKind::Boxes: {
        const Vec lo = anchor - rng.uniform_vector(n, 0.1, 1.0);
        const Vec hi = anchor + rng.uniform_vector(n, 0.1, 1.0);
        sets.push_back(SimpleSetd::box(lo, hi));
        break;
      }
      case ToyKind::Halfspaces:
      case ToyKind::Mixed: {
        const Vec normal = rng.unit_vector(n);
        sets.push_back(SimpleSetd::halfspace(normal, normal.dot(anchor) + rng.uniform(0.0, 0.5)));
        break;
      }
    }
  }
  const auto norm = AbsoluteNormd::l1();
  const SimpleSetd domain = SimpleSetd::box(Vec::Constant(n, -3.0), Vec::Constant(n, 3.0));
  ProblemInstance inst("feasibility_toy", domain, PenaltyModeld(norm, sets),
                       make_penalty_config(norm, m, lambda, 1.0, std::nullopt), zero_oracle(),
                       Vec::Constant(n, 3.0));
  inst.fingerprint = "feasibility_toy;kind=" + to_string(kind) + ";n=" + std::to_string(n) +
                     ";m=" + std::to_string(m) + ";seed=" + std::to_string(seed) +
                     ";lambda=" + fmt(lambda);
  inst.anchor = anchor;
  inst.known_optimum = 0.0;
  return inst;
}

ProblemInstance two_box_quadratic(const TwoBoxOptions& options) {
  const int n = options.n;
  if (n < 1) throw ConfigError("two_box_quadratic: n must be >= 1");
  Vec c(n);
  for (int i = 0; i < n; ++i) c(i) = i % 2 == 0 ? 2.0 : -1.0;
  if (options.center) {
    require_dim(options.center->size(), n, "two_box_quadratic center");
    c = *options.center;
  }
  const Vec lo = Vec::Constant(n, -2.0);
  const Vec hi = Vec::Constant(n, 3.0);
  const auto norm = AbsoluteNormd::l1();
  std::vector<SimpleSetd> sets{SimpleSetd::box(Vec::Zero(n), Vec::Ones(n)),
                               SimpleSetd::box(Vec::Constant(n, 0.5), Vec::Constant(n, 1.5))};
  const SmoothOracle oracle = quadratic_oracle(c, 2.0 * max_corner_distance(c, lo, hi));
  const double upsilon = std::sqrt(2.0);
  auto probe = make_penalty_config(norm, 2, 1.0, oracle.lipschitz, upsilon);
  const double lambda = options.lambda.value_or(min_valid_lambda(probe));
  ProblemInstance inst("two_box_quadratic", SimpleSetd::box(lo, hi), PenaltyModeld(norm, sets),
                       make_penalty_config(norm, 2, lambda, oracle.lipschitz, upsilon), oracle,
                       Vec::Zero(n));
  inst.fingerprint = "two_box_quadratic;n=" + std::to_string(n) + ";center=" + fmt(c) +
                     ";lambda=" + fmt(lambda);
  const Vec minimizer = c.cwiseMax(0.5).cwiseMin(1.0);
  inst.known_minimizer = minimizer;
  inst.known_optimum = (minimizer - c).squaredNorm();
  inst.anchor = minimizer;
  return inst;
}

ProblemInstance piecewise_linear_toy(const PiecewiseLinearOptions& options) {
  Mat B(4, 2);
  B << 1.0, 0.2, -0.3, 1.0, -1.0, -0.6, 0.4, -1.0;
  const Vec peak = vec2(1.5, 0.8);
  const Vec b = B * peak;
  double lipschitz = 0.0;
  for (Index i = 0; i < B.rows(); ++i) lipschitz = std::max(lipschitz, B.row(i).norm());

  auto primal = [B, b](const Vec& x) { return (B * x - b).maxCoeff(); };
  Oracle oracle;
  if (options.view == OracleView::Saddle) {
    SaddleOracle o;
    o.value = [B, b](const Vec& x, const Vec& z) { return z.dot(B * x - b); };
    o.grad_x = [B](const Vec&, const Vec& z) { return Vec(B.transpose() * z); };
    o.grad_z = [B, b](const Vec& x, const Vec&) { return Vec(B * x - b); };
    o.z_set = SimpleSetd::simplex(B.rows());
    o.gradient_lipschitz = power_iteration_norm(B, 200);
    o.primal_value = primal;
    o.lipschitz = lipschitz;
    oracle = o;
  } else {
    NonsmoothOracle o;
    o.value = primal;
    o.subgradient = [B, b](const Vec& x) {
      Index arg = 0;
      (B * x - b).maxCoeff(&arg);
      return Vec(B.row(arg).transpose());
    };
    o.lipschitz = lipschitz;
    oracle = o;
  }
  const auto norm = AbsoluteNormd::l1();
  std::vector<SimpleSetd> sets{SimpleSetd::halfspace(vec2(1.0, 1.0), 1.0),
                               SimpleSetd::halfspace(vec2(1.0, -1.0), 1.0)};
  const double upsilon = wedge_upsilon(1.0);
  auto probe = make_penalty_config(norm, 2, 1.0, lipschitz, upsilon);
  const double lambda = options.lambda.value_or(min_valid_lambda(probe));
  ProblemInstance inst("piecewise_linear", SimpleSetd::box(vec2(-2, -2), vec2(2, 2)),
                       PenaltyModeld(norm, sets),
                       make_penalty_config(norm, 2, lambda, lipschitz, upsilon), oracle,
                       vec2(0, 0));
  // Both views describe the same problem and share reference optima.
  inst.fingerprint = "piecewise_linear;lambda=" + fmt(lambda);
  inst.anchor = vec2(0, 0);
  return inst;
}

namespace {

class ParamReader {
 public:
  ParamReader(std::string problem, const ParamMap& params, std::set<std::string> allowed)
      : problem_(std::move(problem)), params_(params) {
    for (const auto& [key, value] : params) {
      if (!allowed.count(key)) {
        throw ConfigError("problem." + key + ": unknown parameter for " + problem_);
      }
    }
  }

  std::optional<double> number(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end()) return std::nullopt;
    if (const auto* d = std::get_if<double>(&it->second)) return *d;
    throw ConfigError("problem." + key + ": expected a number");
  }

  double number(const std::string& key, double fallback) const {
    return number(key).value_or(fallback);
  }

  int integer(const std::string& key, int fallback) const {
    const double v = number(key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      throw ConfigError("problem." + key + ": expected an integer");
    }
    return static_cast<int>(v);
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    throw ConfigError("problem." + key + ": expected a string");
  }

  std::optional<Vec> vector(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end()) return std::nullopt;
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) {
      return Vec(Eigen::Map<const Vec>(v->data(), static_cast<Index>(v->size())));
    }
    throw ConfigError("problem." + key + ": expected a list of numbers");
  }

 private:
  std::string problem_;
  const ParamMap& params_;
};

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names{"counter_example_1", "wedge",
                                              "graph_matching",    "feasibility_toy",
                                              "two_box_quadratic", "piecewise_linear"};
  return names;
}

ProblemInstance make_problem(const std::string& name, const ParamMap& params) {
  if (name == "counter_example_1") {
    ParamReader r(name, params, {"lambda"});
    return counter_example_1(r.number("lambda", 29.0));
  }
  if (name == "wedge") {
    ParamReader r(name, params, {"slope", "objective", "norm", "lambda", "lo", "hi", "center"});
    WedgeOptions o;
    o.slope = r.number("slope", o.slope);
    const std::string objective = r.text("objective", "quadratic");
    if (objective == "linear") {
      o.objective = WedgeObjective::Linear;
    } else if (objective == "quadratic") {
      o.objective = WedgeObjective::Quadratic;
    } else {
      throw ConfigError("problem.objective: expected 'linear' or 'quadratic'");
    }
    o.norm = r.text("norm", o.norm);
    o.lambda = r.number("lambda");
    o.lo = r.vector("lo");
    o.hi = r.vector("hi");
    o.center = r.vector("center");
    return wedge_testbed(o);
  }
  if (name == "graph_matching") {
    ParamReader r(name, params, {"n", "seed", "mode", "edge_probability", "lambda", "norm"});
    GraphMatchingOptions o;
    o.n = r.integer("n", o.n);
    const int seed = r.integer("seed", static_cast<int>(o.seed));
    if (seed < 0) throw ConfigError("problem.seed: must be nonnegative");
    o.seed = static_cast<std::uint64_t>(seed);
    const std::string mode = r.text("mode", "random");
    if (mode == "random") {
      o.mode = GraphMode::Random;
    } else if (mode == "identical") {
      o.mode = GraphMode::Identical;
    } else {
      throw ConfigError("problem.mode: expected 'random' or 'identical'");
    }
    o.edge_probability = r.number("edge_probability", o.edge_probability);
    o.lambda = r.number("lambda", o.lambda);
    o.norm = r.text("norm", o.norm);
    return graph_matching(o);
  }
  if (name == "feasibility_toy") {
    ParamReader r(name, params, {"kind", "n", "m", "seed", "lambda"});
    const int seed = r.integer("seed", 1);
    if (seed < 0) throw ConfigError("problem.seed: must be nonnegative");
    return feasibility_toy(toy_kind_from_string(r.text("kind", "balls")), r.integer("n", 3),
                           r.integer("m", 3), static_cast<std::uint64_t>(seed),
                           r.number("lambda", 1.0));
  }
  if (name == "two_box_quadratic") {
    ParamReader r(name, params, {"n", "center", "lambda"});
    TwoBoxOptions o;
    o.n = r.integer("n", o.n);
    o.center = r.vector("center");
    o.lambda = r.number("lambda");
    return two_box_quadratic(o);
  }
  if (name == "piecewise_linear") {
    ParamReader r(name, params, {"view", "lambda"});
    PiecewiseLinearOptions o;
    const std::string view = r.text("view", "saddle");
    if (view == "saddle") {
      o.view = OracleView::Saddle;
    } else if (view == "subgradient") {
      o.view = OracleView::Subgradient;
    } else {
      throw ConfigError("problem.view: expected 'saddle' or 'subgradient'");
    }
    o.lambda = r.number("lambda");
    return piecewise_linear_toy(o);
  }
  throw ConfigError("problem.name: unknown problem '" + name + "'");
}

}  // namespace exactpen
