#pragma once

#include "exactpen/penalty.hpp"

namespace exactpen {

/// Stacked dual variable (y_1, ..., y_m); column i is the block paired with C_i.
template <typename Scalar>
using DualBlock = Matrix<Scalar>;

using DualBlockd = DualBlock<double>;

/// Copies x into m blocks.
template <typename Derived>
Matrix<typename Derived::Scalar> replicate(const Eigen::MatrixBase<Derived>& x, Index m) {
  return x.replicate(1, m);
}

/// sum_i y_i
template <typename Derived>
Vector<typename Derived::Scalar> block_sum(const Eigen::MatrixBase<Derived>& Y) {
  return Y.rowwise().sum();
}

template <typename Derived>
Vector<typename Derived::Scalar> block_norms(const Eigen::MatrixBase<Derived>& Y) {
  return Y.colwise().norm().transpose();
}

/// Amount by which Y violates P*(||y_1||, ..., ||y_m||) <= lambda.
template <typename Scalar, typename Derived>
Scalar dual_infeasibility(const AbsoluteNorm<Scalar>& norm, Scalar lambda,
                          const Eigen::MatrixBase<Derived>& Y) {
  return std::max(Scalar(0), norm.eval_dual(block_norms(Y)) - lambda);
}

template <typename Scalar, typename Derived>
bool in_dual_set(const AbsoluteNorm<Scalar>& norm, Scalar lambda,
                 const Eigen::MatrixBase<Derived>& Y, Scalar tol = Scalar(1e-10)) {
  return dual_infeasibility(norm, lambda, Y) <= tol;
}

namespace detail {

/// Rescales each block to the radius chosen by the dual-ball projection.
template <typename Scalar>
DualBlock<Scalar> rescale_blocks(const AbsoluteNorm<Scalar>& norm, Scalar lambda,
                                 const DualBlock<Scalar>& blocks) {
  const Vector<Scalar> radii_in = block_norms(blocks);
  const Vector<Scalar> radii = norm.project_dual_ball(radii_in, lambda);
  DualBlock<Scalar> out(blocks.rows(), blocks.cols());
  for (Index i = 0; i < blocks.cols(); ++i) {
    if (radii_in(i) <= zero_cutoff<Scalar>()) {
      out.col(i).setZero();
    } else {
      out.col(i) = (radii(i) / radii_in(i)) * blocks.col(i);
    }
  }
  return out;
}

}  // namespace detail

/// Euclidean projection onto Y^lambda_P = {Y : P*(||y_1||, ..., ||y_m||) <= lambda}.
template <typename Scalar, typename Derived>
DualBlock<Scalar> project_Y(const AbsoluteNorm<Scalar>& norm, Scalar lambda,
                            const Eigen::MatrixBase<Derived>& Y) {
  if (!(lambda > 0)) throw InputError("project_Y: lambda must be positive");
  norm.check_dim(Y.cols(), "project_Y");
  if (in_dual_set(norm, lambda, Y, Scalar(0))) return Y;
  return detail::rescale_blocks(norm, lambda, DualBlock<Scalar>(Y));
}

/// prox of gamma * g, g(Y) = sum_i sigma_{C_i}(y_i) + indicator(Y^lambda_P),
/// plus the projection points P_{C_i}(y_i / gamma) it was built from.
template <typename Scalar>
struct ProxResult {
  DualBlock<Scalar> blocks;
  DualBlock<Scalar> projections;
};

template <typename Scalar, typename Derived>
ProxResult<Scalar> prox_g_with_points(const PenaltyModel<Scalar>& model, Scalar lambda,
                                      Scalar gamma, const Eigen::MatrixBase<Derived>& Y) {
  if (!(gamma > 0)) throw InputError("prox_g: gamma must be positive");
  if (!(lambda > 0)) throw InputError("prox_g: lambda must be positive");
  require_dim(Y.rows(), model.dim(), "prox_g block dimension");
  require_dim(Y.cols(), model.m(), "prox_g block count");
  ProxResult<Scalar> out;
  out.projections.resize(Y.rows(), Y.cols());
  DualBlock<Scalar> residuals(Y.rows(), Y.cols());
  for (Index i = 0; i < model.m(); ++i) {
    const Vector<Scalar> scaled = Y.col(i) / gamma;
    out.projections.col(i) = model.sets[i].project(scaled);
    residuals.col(i) = Y.col(i) - gamma * out.projections.col(i);
  }
  out.blocks = detail::rescale_blocks(model.norm, lambda, residuals);
  return out;
}

template <typename Scalar, typename Derived>
DualBlock<Scalar> prox_g(const PenaltyModel<Scalar>& model, Scalar lambda, Scalar gamma,
                         const Eigen::MatrixBase<Derived>& Y) {
  return prox_g_with_points(model, lambda, gamma, Y).blocks;
}

/// Blockwise P_{C_i}(y_i / gamma_y): the support-function subgradient point.
template <typename Scalar, typename Derived>
DualBlock<Scalar> g_subgradient_point(const PenaltyModel<Scalar>& model, Scalar gamma_y,
                                      const Eigen::MatrixBase<Derived>& Y) {
  if (!(gamma_y > 0)) throw InputError("g_subgradient_point: gamma must be positive");
  require_dim(Y.cols(), model.m(), "g_subgradient_point block count");
  DualBlock<Scalar> out(Y.rows(), Y.cols());
  for (Index i = 0; i < model.m(); ++i) {
    out.col(i) = model.sets[i].project(Vector<Scalar>(Y.col(i) / gamma_y));
  }
  return out;
}

/// (1/(2 gamma)) ||Y - Y'||^2 + sum_i sigma_{C_i}(y'_i), the objective prox_g minimises.
template <typename Scalar, typename D1, typename D2>
Scalar prox_objective(const PenaltyModel<Scalar>& model, Scalar gamma,
                      const Eigen::MatrixBase<D1>& Y, const Eigen::MatrixBase<D2>& candidate) {
  Scalar value = (Y - candidate).squaredNorm() / (Scalar(2) * gamma);
  for (Index i = 0; i < model.m(); ++i) {
    value += model.sets[i].support(Vector<Scalar>(candidate.col(i)));
  }
  return value;
}

}  // namespace exactpen
