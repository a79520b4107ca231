#include "exactpen/oracle.hpp"

#include "exactpen/random.hpp"
#include "exactpen/sampling.hpp"

#include <algorithm>
#include <sstream>

namespace exactpen {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt_margin(double margin) {
  std::ostringstream out;
  out.precision(6);
  out << "worst margin " << margin;
  return out.str();
}

CheckResult make_check(std::string name, double worst, double tol) {
  CheckResult c;
  c.name = std::move(name);
  c.worst_margin = worst;
  c.passed = worst <= tol;
  c.detail = fmt_margin(worst);
  return c;
}

Vec central_difference(const ScalarFunction& f, const Vec& x) {
  Vec grad(x.size());
  Vec probe = x;
  for (Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
    probe(i) = x(i) + h;
    const double up = f(probe);
    probe(i) = x(i) - h;
    const double down = f(probe);
    probe(i) = x(i);
    grad(i) = (up - down) / (2.0 * h);
  }
  return grad;
}

double fd_relative_error(const ScalarFunction& f, const Vec& grad, const Vec& x) {
  return (central_difference(f, x) - grad).norm() / std::max(1.0, grad.norm());
}

}  // namespace

std::string oracle_kind(const Oracle& oracle) {
  return std::visit(Overloaded{[](const NonsmoothOracle&) { return std::string("nonsmooth"); },
                               [](const SmoothOracle&) { return std::string("smooth"); },
                               [](const SaddleOracle&) { return std::string("saddle"); }},
                    oracle);
}

double objective_value(const Oracle& oracle, const Vec& x) {
  return std::visit(Overloaded{[&](const NonsmoothOracle& o) { return o.value(x); },
                               [&](const SmoothOracle& o) { return o.value(x); },
                               [&](const SaddleOracle& o) { return o.primal_value(x); }},
                    oracle);
}

double objective_lipschitz(const Oracle& oracle) {
  return std::visit([](const auto& o) { return o.lipschitz; }, oracle);
}

double objective_strong_convexity(const Oracle& oracle) {
  return std::visit(Overloaded{[](const NonsmoothOracle& o) { return o.strong_convexity; },
                               [](const SmoothOracle& o) { return o.strong_convexity; },
                               [](const SaddleOracle&) { return 0.0; }},
                    oracle);
}

NonsmoothOracle as_nonsmooth(const SmoothOracle& oracle) {
  NonsmoothOracle out;
  out.value = oracle.value;
  out.subgradient = oracle.gradient;
  out.lipschitz = oracle.lipschitz;
  out.strong_convexity = oracle.strong_convexity;
  out.lipschitz_estimated = oracle.lipschitz_estimated;
  return out;
}

OracleReport validate_oracle(const Oracle& oracle, const SimpleSetd& domain, int samples,
                             std::uint64_t seed) {
  if (samples < 10) throw ConfigError("validate_oracle: samples must be >= 10");
  Rng rng(seed);
  OracleReport report;

  auto first_order_checks = [&](const ScalarFunction& value, const VectorFunction& grad,
                                double lipschitz, double mu) {
    double bound = -1e300;
    double convexity = -1e300;
    for (int s = 0; s < samples; ++s) {
      const Vec x = sample_point(domain, rng);
      const Vec y = sample_point(domain, rng);
      const Vec g = grad(x);
      bound = std::max(bound, g.norm() - lipschitz);
      const double lower = value(x) + g.dot(y - x) + 0.5 * mu * (y - x).squaredNorm();
      convexity = std::max(convexity, lower - value(y));
    }
    report.checks.push_back(make_check("subgradient_bound", bound, 1e-9));
    report.checks.push_back(make_check("convexity", convexity, 1e-8));
  };

  std::visit(
      Overloaded{
          [&](const NonsmoothOracle& o) {
            first_order_checks(o.value, o.subgradient, o.lipschitz, o.strong_convexity);
          },
          [&](const SmoothOracle& o) {
            first_order_checks(o.value, o.gradient, o.lipschitz, o.strong_convexity);
            double lip = -1e300;
            double fd = 0;
            for (int s = 0; s < samples; ++s) {
              const Vec x = sample_point(domain, rng);
              const Vec y = sample_point(domain, rng);
              lip = std::max(lip, (o.gradient(x) - o.gradient(y)).norm() -
                                      o.gradient_lipschitz * (x - y).norm());
              if (s < 5) fd = std::max(fd, fd_relative_error(o.value, o.gradient(x), x));
            }
            report.checks.push_back(make_check("gradient_lipschitz", lip, 1e-8));
            report.checks.push_back(make_check("finite_difference", fd, 1e-5));
          },
          [&](const SaddleOracle& o) {
            double convex_x = -1e300;
            double concave_z = -1e300;
            double fd = 0;
            for (int s = 0; s < samples; ++s) {
              const Vec x = sample_point(domain, rng);
              const Vec y = sample_point(domain, rng);
              const Vec z = sample_point(o.z_set, rng);
              const Vec w = sample_point(o.z_set, rng);
              const double f = o.value(x, z);
              convex_x = std::max(convex_x, f + o.grad_x(x, z).dot(y - x) - o.value(y, z));
              concave_z = std::max(concave_z, o.value(x, w) - f - o.grad_z(x, z).dot(w - z));
              if (s < 5) {
                const ScalarFunction fx = [&](const Vec& p) { return o.value(p, z); };
                const ScalarFunction fz = [&](const Vec& p) { return o.value(x, p); };
                fd = std::max(fd, fd_relative_error(fx, o.grad_x(x, z), x));
                fd = std::max(fd, fd_relative_error(fz, o.grad_z(x, z), z));
              }
            }
            report.checks.push_back(make_check("convex_in_x", convex_x, 1e-8));
            report.checks.push_back(make_check("concave_in_z", concave_z, 1e-8));
            report.checks.push_back(make_check("finite_difference", fd, 1e-5));
          }},
      oracle);
  return report;
}

ConstantEstimates estimate_constants(const ScalarFunction& value, const VectorFunction& gradient,
                                     const SimpleSetd& domain, int samples, std::uint64_t seed) {
  (void)value;
  Rng rng(seed);
  double max_grad = 0;
  double max_ratio = 0;
  for (int s = 0; s < samples; ++s) {
    const Vec x = sample_point(domain, rng);
    const Vec y = sample_point(domain, rng);
    const Vec gx = gradient(x);
    max_grad = std::max(max_grad, gx.norm());
    const double dist = (x - y).norm();
    if (dist > 1e-12) max_ratio = std::max(max_ratio, (gx - gradient(y)).norm() / dist);
  }
  return {2.0 * max_grad, 2.0 * max_ratio};
}

}  // namespace exactpen
