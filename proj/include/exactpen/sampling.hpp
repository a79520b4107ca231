#pragma once

#include "exactpen/random.hpp"
#include "exactpen/sets.hpp"

namespace exactpen {

/// A random member of `set`. Bounded kinds are sampled throughout their volume
/// (not only on the boundary); unbounded kinds project a Gaussian cloud of the
/// given scale centred at the origin.
inline Vec sample_point(const SimpleSetd& set, Rng& rng, double scale = 1.0) {
  const Index n = set.dim();
  switch (set.kind()) {
    case SetKind::Box: {
      const auto& p = std::get<SimpleSetd::BoxParams>(set.params());
      Vec out(n);
      for (Index i = 0; i < n; ++i) out(i) = rng.uniform(p.lo(i), p.hi(i));
      return out;
    }
    case SetKind::Simplex: {
      const auto& p = std::get<SimpleSetd::SimplexParams>(set.params());
      Vec e(n);
      for (Index i = 0; i < n; ++i) e(i) = -std::log(1.0 - rng.uniform());
      return set.project(Vec(p.total * e / e.sum()));
    }
    case SetKind::L2Ball:
    case SetKind::L1Ball:
    case SetKind::LinfBall: {
      const auto& p = std::get<SimpleSetd::BallParams>(set.params());
      const Vec direction = rng.unit_vector(n);
      const double r = p.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
      return set.project(Vec(p.center + r * direction));
    }
    case SetKind::SimplexProduct: {
      const auto& p = std::get<SimpleSetd::ProductParams>(set.params());
      Mat M(p.rows, p.cols);
      for (Index i = 0; i < n; ++i) M.data()[i] = -std::log(1.0 - rng.uniform());
      if (p.axis == ProductAxis::Rows) {
        for (Index r = 0; r < p.rows; ++r) M.row(r) *= p.total / M.row(r).sum();
      } else {
        for (Index c = 0; c < p.cols; ++c) M.col(c) *= p.total / M.col(c).sum();
      }
      return set.project(Vec(Eigen::Map<const Vec>(M.data(), n)));
    }
    default:
      return set.project(Vec(scale * rng.normal_vector(n)));
  }
}

}  // namespace exactpen
