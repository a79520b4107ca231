#pragma once

#include "exactpen/common.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace exactpen {

/// Euclidean projection of v onto {x >= 0, sum(x) = total} by sort-and-threshold.
template <typename Derived>
Vector<typename Derived::Scalar> project_simplex(const Eigen::MatrixBase<Derived>& v,
                                                 typename Derived::Scalar total) {
  using Scalar = typename Derived::Scalar;
  const Index n = v.size();
  Vector<Scalar> sorted = v;
  std::sort(sorted.data(), sorted.data() + n, std::greater<Scalar>());
  Scalar cumulative = 0;
  Scalar threshold = (sorted(0) - total);
  for (Index j = 0; j < n; ++j) {
    cumulative += sorted(j);
    const Scalar candidate = (cumulative - total) / Scalar(j + 1);
    if (sorted(j) - candidate > 0) threshold = candidate;
  }
  return (v.array() - threshold).max(Scalar(0)).matrix();
}

/// Euclidean projection of v onto the origin-centred l1 ball of the given radius.
template <typename Derived>
Vector<typename Derived::Scalar> project_l1_ball(const Eigen::MatrixBase<Derived>& v,
                                                 typename Derived::Scalar radius) {
  using Scalar = typename Derived::Scalar;
  if (v.template lpNorm<1>() <= radius) return v;
  const Vector<Scalar> magnitude = project_simplex(v.cwiseAbs(), radius);
  Vector<Scalar> out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    out(i) = v(i) < 0 ? -magnitude(i) : magnitude(i);
  }
  return out;
}

enum class SetKind {
  Box,
  Simplex,
  L2Ball,
  L1Ball,
  LinfBall,
  Halfspace,
  Hyperplane,
  NonnegOrthant,
  Affine,
  SimplexProduct,
};

/// Which slices of the reshaped matrix must lie in a simplex.
enum class ProductAxis { Rows, Cols };

inline std::string_view to_string(SetKind kind) {
  switch (kind) {
    case SetKind::Box: return "box";
    case SetKind::Simplex: return "simplex";
    case SetKind::L2Ball: return "l2_ball";
    case SetKind::L1Ball: return "l1_ball";
    case SetKind::LinfBall: return "linf_ball";
    case SetKind::Halfspace: return "halfspace";
    case SetKind::Hyperplane: return "hyperplane";
    case SetKind::NonnegOrthant: return "nonneg_orthant";
    case SetKind::Affine: return "affine";
    case SetKind::SimplexProduct: return "simplex_product";
  }
  return "unknown";
}

inline std::optional<SetKind> set_kind_from_string(std::string_view tag) {
  for (SetKind k : {SetKind::Box, SetKind::Simplex, SetKind::L2Ball, SetKind::L1Ball,
                    SetKind::LinfBall, SetKind::Halfspace, SetKind::Hyperplane,
                    SetKind::NonnegOrthant, SetKind::Affine, SetKind::SimplexProduct}) {
    if (to_string(k) == tag) return k;
  }
  return std::nullopt;
}

/// A closed convex set with an exact Euclidean projection oracle.
///
/// Instances are immutable after construction. The named constructors reject
/// parameters that would describe an empty or non-closed set.
template <typename Scalar>
class SimpleSet {
 public:
  using VectorType = Vector<Scalar>;
  using MatrixType = Matrix<Scalar>;
  using ConstRef = Eigen::Ref<const VectorType>;

  struct BoxParams {
    VectorType lo, hi;
  };
  struct SimplexParams {
    Index n;
    Scalar total;
  };
  struct BallParams {
    VectorType center;
    Scalar radius;
  };
  struct HalfspaceParams {
    VectorType normal;
    Scalar offset;
  };
  struct OrthantParams {
    Index n;
  };
  struct AffineParams {
    MatrixType A;
    VectorType b;
    MatrixType pinv;  // pseudo-inverse of A, fixed at construction
  };
  struct ProductParams {
    Index rows, cols;
    ProductAxis axis;
    Scalar total;
  };
  using Params = std::variant<BoxParams, SimplexParams, BallParams, HalfspaceParams,
                              OrthantParams, AffineParams, ProductParams>;

  static SimpleSet box(VectorType lo, VectorType hi) {
    require_dim(hi.size(), lo.size(), "box upper bound");
    if (lo.size() == 0) throw ConfigError("box: empty dimension");
    require_finite(lo, "box lower bound");
    require_finite(hi, "box upper bound");
    if ((lo.array() > hi.array()).any()) throw ConfigError("box: lo must not exceed hi");
    return SimpleSet(SetKind::Box, BoxParams{std::move(lo), std::move(hi)});
  }

  static SimpleSet simplex(Index n, Scalar total = Scalar(1)) {
    if (n < 1) throw ConfigError("simplex: dimension must be >= 1");
    if (!(total > 0) || !std::isfinite(static_cast<double>(total))) {
      throw ConfigError("simplex: total must be positive");
    }
    return SimpleSet(SetKind::Simplex, SimplexParams{n, total});
  }

  static SimpleSet l2_ball(VectorType center, Scalar radius) {
    return ball(SetKind::L2Ball, std::move(center), radius);
  }
  static SimpleSet l1_ball(VectorType center, Scalar radius) {
    return ball(SetKind::L1Ball, std::move(center), radius);
  }
  static SimpleSet linf_ball(VectorType center, Scalar radius) {
    return ball(SetKind::LinfBall, std::move(center), radius);
  }

  /// {x : <normal, x> <= offset}
  static SimpleSet halfspace(VectorType normal, Scalar offset) {
    return plane(SetKind::Halfspace, std::move(normal), offset);
  }
  /// {x : <normal, x> = offset}
  static SimpleSet hyperplane(VectorType normal, Scalar offset) {
    return plane(SetKind::Hyperplane, std::move(normal), offset);
  }

  static SimpleSet nonneg_orthant(Index n) {
    if (n < 1) throw ConfigError("nonneg_orthant: dimension must be >= 1");
    return SimpleSet(SetKind::NonnegOrthant, OrthantParams{n});
  }

  /// {x : A x = b}; b must lie in the range of A.
  static SimpleSet affine(MatrixType A, VectorType b) {
    require_dim(b.size(), A.rows(), "affine right-hand side");
    if (A.cols() == 0 || A.rows() == 0) throw ConfigError("affine: empty constraint matrix");
    require_finite(A, "affine matrix");
    require_finite(b, "affine right-hand side");
    MatrixType pinv = Eigen::CompleteOrthogonalDecomposition<MatrixType>(A).pseudoInverse();
    const VectorType reproduced = A * (pinv * b);
    const Scalar scale = std::max(Scalar(1), b.norm());
    if ((reproduced - b).norm() > Scalar(1e-9) * scale) {
      throw ConfigError("affine: system A x = b is inconsistent (empty set)");
    }
    return SimpleSet(SetKind::Affine, AffineParams{std::move(A), std::move(b), std::move(pinv)});
  }

  /// Vectors of length rows*cols read as a column-major rows x cols matrix whose
  /// every row (axis = Rows) or every column (axis = Cols) lies in a simplex.
  static SimpleSet simplex_product(Index rows, Index cols, ProductAxis axis,
                                   Scalar total = Scalar(1)) {
    if (rows < 1 || cols < 1) throw ConfigError("simplex_product: shape must be positive");
    if (!(total > 0)) throw ConfigError("simplex_product: total must be positive");
    return SimpleSet(SetKind::SimplexProduct, ProductParams{rows, cols, axis, total});
  }

  SetKind kind() const { return kind_; }
  const Params& params() const { return params_; }

  Index dim() const {
    return std::visit(
        [](const auto& p) -> Index {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, BoxParams>) return p.lo.size();
          else if constexpr (std::is_same_v<P, SimplexParams>) return p.n;
          else if constexpr (std::is_same_v<P, BallParams>) return p.center.size();
          else if constexpr (std::is_same_v<P, HalfspaceParams>) return p.normal.size();
          else if constexpr (std::is_same_v<P, OrthantParams>) return p.n;
          else if constexpr (std::is_same_v<P, AffineParams>) return p.A.cols();
          else return p.rows * p.cols;
        },
        params_);
  }

  /// Upper bound on ||a - b|| over the set; empty for unbounded sets.
  std::optional<Scalar> diameter() const {
    using std::sqrt;
    switch (kind_) {
      case SetKind::Box: {
        const auto& p = std::get<BoxParams>(params_);
        return (p.hi - p.lo).norm();
      }
      case SetKind::Simplex: {
        const auto& p = std::get<SimplexParams>(params_);
        return p.n == 1 ? Scalar(0) : p.total * sqrt(Scalar(2));
      }
      case SetKind::L2Ball:
      case SetKind::L1Ball:
        return Scalar(2) * std::get<BallParams>(params_).radius;
      case SetKind::LinfBall: {
        const auto& p = std::get<BallParams>(params_);
        return Scalar(2) * p.radius * sqrt(Scalar(p.center.size()));
      }
      case SetKind::SimplexProduct: {
        const auto& p = std::get<ProductParams>(params_);
        const Index factors = p.axis == ProductAxis::Rows ? p.rows : p.cols;
        const Index width = p.axis == ProductAxis::Rows ? p.cols : p.rows;
        if (width == 1) return Scalar(0);
        return p.total * sqrt(Scalar(2) * Scalar(factors));
      }
      case SetKind::Affine: {
        // A single point when A has full column rank.
        const auto& p = std::get<AffineParams>(params_);
        Eigen::CompleteOrthogonalDecomposition<MatrixType> cod(p.A);
        if (cod.rank() == p.A.cols()) return Scalar(0);
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }

  /// Support functions are available in closed form for bounded, separable kinds.
  bool has_support_function() const {
    switch (kind_) {
      case SetKind::Box:
      case SetKind::Simplex:
      case SetKind::L2Ball:
      case SetKind::L1Ball:
      case SetKind::LinfBall:
      case SetKind::NonnegOrthant:
      case SetKind::SimplexProduct:
        return true;
      default:
        return false;
    }
  }

  bool is_bounded() const { return diameter().has_value(); }

  VectorType project(ConstRef x) const {
    check_input(x, "project");
    VectorType out = project_unchecked(x);
    if (!out.allFinite()) throw InputError("project: projection produced a non-finite point");
    return out;
  }

  /// Largest constraint violation of x; 0 for members.
  Scalar residual(ConstRef x) const {
    check_input(x, "residual");
    using std::abs;
    using std::max;
    switch (kind_) {
      case SetKind::Box: {
        const auto& p = std::get<BoxParams>(params_);
        return max(Scalar(0), max((p.lo - x).maxCoeff(), (x - p.hi).maxCoeff()));
      }
      case SetKind::Simplex: {
        const auto& p = std::get<SimplexParams>(params_);
        return max(max(Scalar(0), -x.minCoeff()), abs(x.sum() - p.total));
      }
      case SetKind::L2Ball: {
        const auto& p = std::get<BallParams>(params_);
        return max(Scalar(0), (x - p.center).norm() - p.radius);
      }
      case SetKind::L1Ball: {
        const auto& p = std::get<BallParams>(params_);
        return max(Scalar(0), (x - p.center).template lpNorm<1>() - p.radius);
      }
      case SetKind::LinfBall: {
        const auto& p = std::get<BallParams>(params_);
        return max(Scalar(0), (x - p.center).template lpNorm<Eigen::Infinity>() - p.radius);
      }
      case SetKind::Halfspace: {
        const auto& p = std::get<HalfspaceParams>(params_);
        return max(Scalar(0), p.normal.dot(x) - p.offset) / p.normal.norm();
      }
      case SetKind::Hyperplane: {
        const auto& p = std::get<HalfspaceParams>(params_);
        return abs(p.normal.dot(x) - p.offset) / p.normal.norm();
      }
      case SetKind::NonnegOrthant:
        return max(Scalar(0), -x.minCoeff());
      case SetKind::Affine: {
        const auto& p = std::get<AffineParams>(params_);
        return (p.A * x - p.b).norm();
      }
      case SetKind::SimplexProduct: {
        const auto& p = std::get<ProductParams>(params_);
        Eigen::Map<const MatrixType> M(x.data(), p.rows, p.cols);
        const Vector<Scalar> sums =
            p.axis == ProductAxis::Rows ? VectorType(M.rowwise().sum()) : VectorType(M.colwise().sum().transpose());
        return max(max(Scalar(0), -x.minCoeff()), (sums.array() - p.total).abs().maxCoeff());
      }
    }
    return Scalar(0);
  }

  bool contains(ConstRef x, Scalar tol = Scalar(1e-12)) const { return residual(x) <= tol; }

  /// sup_{a in set} <y, a>; +inf where unbounded in direction y.
  Scalar support(ConstRef y) const {
    check_input(y, "support_function");
    if (!has_support_function()) {
      throw CapabilityError("support_function: no closed form for set kind " +
                            std::string(to_string(kind_)));
    }
    switch (kind_) {
      case SetKind::Box: {
        const auto& p = std::get<BoxParams>(params_);
        return (y.array() * p.hi.array()).max(y.array() * p.lo.array()).sum();
      }
      case SetKind::Simplex:
        return std::get<SimplexParams>(params_).total * y.maxCoeff();
      case SetKind::L2Ball: {
        const auto& p = std::get<BallParams>(params_);
        return y.dot(p.center) + p.radius * y.norm();
      }
      case SetKind::L1Ball: {
        const auto& p = std::get<BallParams>(params_);
        return y.dot(p.center) + p.radius * y.template lpNorm<Eigen::Infinity>();
      }
      case SetKind::LinfBall: {
        const auto& p = std::get<BallParams>(params_);
        return y.dot(p.center) + p.radius * y.template lpNorm<1>();
      }
      case SetKind::NonnegOrthant:
        return (y.array() > 0).any() ? std::numeric_limits<Scalar>::infinity() : Scalar(0);
      case SetKind::SimplexProduct: {
        const auto& p = std::get<ProductParams>(params_);
        Eigen::Map<const MatrixType> M(y.data(), p.rows, p.cols);
        return p.total * (p.axis == ProductAxis::Rows ? M.rowwise().maxCoeff().sum()
                                                      : M.colwise().maxCoeff().sum());
      }
      default:
        break;
    }
    return std::numeric_limits<Scalar>::quiet_NaN();
  }

  /// A maximiser of <y, a> over the set (a subgradient of the support function).
  VectorType support_point(ConstRef y) const {
    check_input(y, "support_point");
    if (!has_support_function() || kind_ == SetKind::NonnegOrthant) {
      throw CapabilityError("support_point: no bounded maximiser for set kind " +
                            std::string(to_string(kind_)));
    }
    const Index n = dim();
    switch (kind_) {
      case SetKind::Box: {
        const auto& p = std::get<BoxParams>(params_);
        return (y.array() > 0).select(p.hi, p.lo);
      }
      case SetKind::Simplex: {
        Index k = 0;
        y.maxCoeff(&k);
        VectorType out = VectorType::Zero(n);
        out(k) = std::get<SimplexParams>(params_).total;
        return out;
      }
      case SetKind::L2Ball: {
        const auto& p = std::get<BallParams>(params_);
        const Scalar norm = y.norm();
        if (norm <= 0) return p.center;
        return p.center + (p.radius / norm) * y;
      }
      case SetKind::L1Ball: {
        const auto& p = std::get<BallParams>(params_);
        Index k = 0;
        y.cwiseAbs().maxCoeff(&k);
        VectorType out = p.center;
        out(k) += y(k) < 0 ? -p.radius : p.radius;
        return out;
      }
      case SetKind::LinfBall: {
        const auto& p = std::get<BallParams>(params_);
        return p.center + p.radius * y.unaryExpr([](Scalar v) {
          return v > 0 ? Scalar(1) : (v < 0 ? Scalar(-1) : Scalar(0));
        });
      }
      case SetKind::SimplexProduct: {
        const auto& p = std::get<ProductParams>(params_);
        Eigen::Map<const MatrixType> M(y.data(), p.rows, p.cols);
        MatrixType out = MatrixType::Zero(p.rows, p.cols);
        if (p.axis == ProductAxis::Rows) {
          for (Index r = 0; r < p.rows; ++r) {
            Index k = 0;
            M.row(r).maxCoeff(&k);
            out(r, k) = p.total;
          }
        } else {
          for (Index c = 0; c < p.cols; ++c) {
            Index k = 0;
            M.col(c).maxCoeff(&k);
            out(k, c) = p.total;
          }
        }
        return Eigen::Map<const VectorType>(out.data(), n);
      }
      default:
        break;
    }
    return VectorType();
  }

 private:
  SimpleSet(SetKind kind, Params params) : kind_(kind), params_(std::move(params)) {}

  static SimpleSet ball(SetKind kind, VectorType center, Scalar radius) {
    if (center.size() == 0) throw ConfigError("ball: empty dimension");
    require_finite(center, "ball center");
    if (!(radius > 0) || !std::isfinite(static_cast<double>(radius))) {
      throw ConfigError("ball: radius must be positive");
    }
    return SimpleSet(kind, BallParams{std::move(center), radius});
  }

  static SimpleSet plane(SetKind kind, VectorType normal, Scalar offset) {
    if (normal.size() == 0) throw ConfigError("halfspace: empty dimension");
    require_finite(normal, "halfspace normal");
    if (!(normal.norm() > 0)) throw ConfigError("halfspace: normal must be nonzero");
    if (!std::isfinite(static_cast<double>(offset))) throw ConfigError("halfspace: non-finite offset");
    return SimpleSet(kind, HalfspaceParams{std::move(normal), offset});
  }

  void check_input(ConstRef x, const char* what) const {
    require_dim(x.size(), dim(), what);
    require_finite(x, what);
  }

  VectorType project_unchecked(ConstRef x) const {
    switch (kind_) {
      case SetKind::Box: {
        const auto& p = std::get<BoxParams>(params_);
        return x.cwiseMax(p.lo).cwiseMin(p.hi);
      }
      case SetKind::Simplex:
        return project_simplex(x, std::get<SimplexParams>(params_).total);
      case SetKind::L2Ball: {
        const auto& p = std::get<BallParams>(params_);
        const VectorType offset = x - p.center;
        const Scalar norm = offset.norm();
        if (norm <= p.radius) return x;
        return p.center + (p.radius / norm) * offset;
      }
      case SetKind::L1Ball: {
        const auto& p = std::get<BallParams>(params_);
        return p.center + project_l1_ball(VectorType(x - p.center), p.radius);
      }
      case SetKind::LinfBall: {
        const auto& p = std::get<BallParams>(params_);
        return x.cwiseMax((p.center.array() - p.radius).matrix())
            .cwiseMin((p.center.array() + p.radius).matrix());
      }
      case SetKind::Halfspace: {
        const auto& p = std::get<HalfspaceParams>(params_);
        const Scalar violation = p.normal.dot(x) - p.offset;
        if (violation <= 0) return x;
        return x - (violation / p.normal.squaredNorm()) * p.normal;
      }
      case SetKind::Hyperplane: {
        const auto& p = std::get<HalfspaceParams>(params_);
        return x - ((p.normal.dot(x) - p.offset) / p.normal.squaredNorm()) * p.normal;
      }
      case SetKind::NonnegOrthant:
        return x.cwiseMax(Scalar(0));
      case SetKind::Affine: {
        const auto& p = std::get<AffineParams>(params_);
        return x - p.pinv * (p.A * x - p.b);
      }
      case SetKind::SimplexProduct: {
        const auto& p = std::get<ProductParams>(params_);
        Eigen::Map<const MatrixType> M(x.data(), p.rows, p.cols);
        MatrixType out(p.rows, p.cols);
        if (p.axis == ProductAxis::Rows) {
          for (Index r = 0; r < p.rows; ++r) {
            out.row(r) = project_simplex(VectorType(M.row(r).transpose()), p.total).transpose();
          }
        } else {
          for (Index c = 0; c < p.cols; ++c) {
            out.col(c) = project_simplex(VectorType(M.col(c)), p.total);
          }
        }
        return Eigen::Map<const VectorType>(out.data(), x.size());
      }
    }
    return x;
  }

  SetKind kind_;
  Params params_;
};

using SimpleSetd = SimpleSet<double>;

template <typename Scalar, typename Derived>
Vector<Scalar> project(const SimpleSet<Scalar>& set, const Eigen::MatrixBase<Derived>& x) {
  return set.project(x);
}

template <typename Scalar, typename Derived>
Scalar distance(const SimpleSet<Scalar>& set, const Eigen::MatrixBase<Derived>& x) {
  const Vector<Scalar> point = x;
  return (point - set.project(point)).norm();
}

/// (x - P(x)) / ||x - P(x)||, or the zero vector for (near-)members.
template <typename Scalar, typename Derived>
Vector<Scalar> distance_subgradient(const SimpleSet<Scalar>& set,
                                    const Eigen::MatrixBase<Derived>& x) {
  const Vector<Scalar> point = x;
  const Vector<Scalar> gap = point - set.project(point);
  const Scalar d = gap.norm();
  if (d <= zero_cutoff<Scalar>()) return Vector<Scalar>::Zero(point.size());
  return gap / d;
}

template <typename Scalar, typename Derived>
Scalar support_function(const SimpleSet<Scalar>& set, const Eigen::MatrixBase<Derived>& y) {
  return set.support(y);
}

}  // namespace exactpen
