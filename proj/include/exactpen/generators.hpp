#pragma once

#include "exactpen/norms.hpp"
#include "exactpen/proxmap.hpp"
#include "exactpen/random.hpp"
#include "exactpen/sampling.hpp"

#include <vector>

namespace exactpen {

/// Set kinds whose support function is finite everywhere.
inline const std::vector<SetKind>& closed_form_support_kinds() {
  static const std::vector<SetKind> kinds = {SetKind::Box, SetKind::Simplex, SetKind::L2Ball,
                                             SetKind::L1Ball, SetKind::LinfBall};
  return kinds;
}

inline const std::vector<SetKind>& all_set_kinds() {
  static const std::vector<SetKind> kinds = {
      SetKind::Box,       SetKind::Simplex,    SetKind::L2Ball,        SetKind::L1Ball,
      SetKind::LinfBall,  SetKind::Halfspace,  SetKind::Hyperplane,    SetKind::NonnegOrthant,
      SetKind::Affine,    SetKind::SimplexProduct};
  return kinds;
}

/// Random set of the given kind in R^n. Simplex products use a 2 x (n/2) shape
/// and need an even n.
inline SimpleSetd random_set(SetKind kind, Index n, Rng& rng) {
  switch (kind) {
    case SetKind::Box: {
      const Vec a = rng.uniform_vector(n, -2.0, 1.0);
      const Vec w = rng.uniform_vector(n, 0.2, 2.0);
      return SimpleSetd::box(a, a + w);
    }
    case SetKind::Simplex:
      return SimpleSetd::simplex(n, rng.uniform(0.5, 2.0));
    case SetKind::L2Ball:
      return SimpleSetd::l2_ball(rng.uniform_vector(n, -1.0, 1.0), rng.uniform(0.3, 2.0));
    case SetKind::L1Ball:
      return SimpleSetd::l1_ball(rng.uniform_vector(n, -1.0, 1.0), rng.uniform(0.3, 2.0));
    case SetKind::LinfBall:
      return SimpleSetd::linf_ball(rng.uniform_vector(n, -1.0, 1.0), rng.uniform(0.3, 2.0));
    case SetKind::Halfspace:
      return SimpleSetd::halfspace(rng.unit_vector(n), rng.uniform(-0.5, 1.0));
    case SetKind::Hyperplane:
      return SimpleSetd::hyperplane(rng.unit_vector(n), rng.uniform(-0.5, 1.0));
    case SetKind::NonnegOrthant:
      return SimpleSetd::nonneg_orthant(n);
    case SetKind::Affine: {
      const Index k = std::max<Index>(1, n / 2);
      Mat A(k, n);
      for (Index i = 0; i < A.size(); ++i) A.data()[i] = rng.normal();
      const Vec x0 = rng.uniform_vector(n, -1.0, 1.0);
      return SimpleSetd::affine(A, A * x0);
    }
    case SetKind::SimplexProduct: {
      if (n % 2 != 0) throw ConfigError("random_set: simplex product needs an even dimension");
      const auto axis = rng.uniform() < 0.5 ? ProductAxis::Rows : ProductAxis::Cols;
      return SimpleSetd::simplex_product(2, n / 2, axis, rng.uniform(0.5, 2.0));
    }
  }
  throw ConfigError("random_set: unknown kind");
}

/// Random set of a closed-form-support kind that contains `anchor`.
inline SimpleSetd random_set_containing(const Vec& anchor, Rng& rng) {
  const Index n = anchor.size();
  const auto& kinds = closed_form_support_kinds();
  switch (kinds[rng.below(kinds.size())]) {
    case SetKind::Box: {
      const Vec lo = anchor - rng.uniform_vector(n, 0.1, 1.5);
      const Vec hi = anchor + rng.uniform_vector(n, 0.1, 1.5);
      return SimpleSetd::box(lo, hi);
    }
    case SetKind::L1Ball: {
      const double r = rng.uniform(0.3, 1.5);
      return SimpleSetd::l1_ball(anchor + 0.9 * r * rng.unit_vector(n) / std::sqrt(double(n)), r);
    }
    case SetKind::LinfBall: {
      const double r = rng.uniform(0.3, 1.5);
      return SimpleSetd::linf_ball(anchor + rng.uniform_vector(n, -0.9 * r, 0.9 * r), r);
    }
    case SetKind::Simplex: {
      // Simplex sets only contain nonnegative points; fall back to a ball otherwise.
      if ((anchor.array() >= 0).all() && anchor.sum() > 0) {
        return SimpleSetd::simplex(n, anchor.sum());
      }
      [[fallthrough]];
    }
    default: {
      const double r = rng.uniform(0.3, 1.5);
      return SimpleSetd::l2_ball(anchor + 0.9 * r * rng.unit_vector(n), r);
    }
  }
}

/// One of l1, l2, linf or a weighted l1 with weights in [0.5, 2].
inline AbsoluteNormd random_norm(Index m, Rng& rng, bool include_weighted = true) {
  const std::uint64_t pick = rng.below(include_weighted ? 4 : 3);
  switch (pick) {
    case 0: return AbsoluteNormd::l1();
    case 1: return AbsoluteNormd::l2();
    case 2: return AbsoluteNormd::linf();
    default: return AbsoluteNormd::weighted_l1(rng.uniform_vector(m, 0.5, 2.0));
  }
}

/// Random member of Y^lambda_P: random directions with block norms drawn in the dual ball.
inline DualBlockd random_dual_block(const AbsoluteNormd& norm, double lambda, Index n, Index m,
                                    Rng& rng) {
  DualBlockd Y(n, m);
  for (Index i = 0; i < m; ++i) Y.col(i) = rng.normal_vector(n);
  const Vec radii = rng.uniform_vector(m, 0.0, 1.0);
  const double dual = norm.eval_dual(radii);
  const double scale = dual > 0 ? lambda * rng.uniform() / dual : 0.0;
  for (Index i = 0; i < m; ++i) {
    const double len = Y.col(i).norm();
    if (len > 0) Y.col(i) *= scale * radii(i) / len;
  }
  return Y;
}

}  // namespace exactpen
