#pragma once

#include "exactpen/sets.hpp"

#include <charconv>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace exactpen {

enum class NormKind { L1, L2, Linf, WeightedL1 };

/// An absolute norm P on R^m (P(u) = P(|u|)) together with its dual P*.
///
/// Weighted l1 carries one positive weight per coordinate, which fixes m; the
/// unweighted kinds accept any dimension.
template <typename Scalar>
class AbsoluteNorm {
 public:
  using VectorType = Vector<Scalar>;
  using ConstRef = Eigen::Ref<const VectorType>;

  static AbsoluteNorm l1() { return AbsoluteNorm(NormKind::L1, {}); }
  static AbsoluteNorm l2() { return AbsoluteNorm(NormKind::L2, {}); }
  static AbsoluteNorm linf() { return AbsoluteNorm(NormKind::Linf, {}); }
  static AbsoluteNorm weighted_l1(VectorType weights) {
    if (weights.size() == 0) throw ConfigError("wl1: weights must be nonempty");
    require_finite(weights, "wl1 weights");
    if ((weights.array() <= 0).any()) throw ConfigError("wl1: weights must be positive");
    return AbsoluteNorm(NormKind::WeightedL1, std::move(weights));
  }

  /// "l1" | "l2" | "linf" | "wl1:[w1,w2,...]"
  static AbsoluteNorm parse(std::string_view text) {
    if (text == "l1") return l1();
    if (text == "l2") return l2();
    if (text == "linf") return linf();
    constexpr std::string_view prefix = "wl1:[";
    if (text.substr(0, prefix.size()) == prefix && text.back() == ']') {
      std::string_view body = text.substr(prefix.size(), text.size() - prefix.size() - 1);
      std::vector<Scalar> values;
      while (!body.empty()) {
        const auto comma = body.find(',');
        std::string token(body.substr(0, comma));
        std::istringstream in(token);
        in.imbue(std::locale::classic());
        double w = 0;
        if (!(in >> w)) throw ConfigError("norm: malformed weight '" + token + "'");
        values.push_back(static_cast<Scalar>(w));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
      }
      return weighted_l1(Eigen::Map<const VectorType>(values.data(), values.size()));
    }
    throw ConfigError("norm: unknown kind '" + std::string(text) + "'");
  }

  std::string to_string() const {
    switch (kind_) {
      case NormKind::L1: return "l1";
      case NormKind::L2: return "l2";
      case NormKind::Linf: return "linf";
      case NormKind::WeightedL1: {
        std::string out = "wl1:[";
        for (Index i = 0; i < weights_.size(); ++i) {
          char buf[32];
          auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(weights_(i)));
          if (i) out += ',';
          out.append(buf, res.ptr);
        }
        return out + "]";
      }
    }
    return "?";
  }

  NormKind kind() const { return kind_; }
  const VectorType& weights() const { return weights_; }

  /// Throws unless vectors of length m are admissible arguments.
  void check_dim(Index m, const char* what) const {
    if (m < 1) throw ConfigError(std::string(what) + ": norm dimension must be >= 1");
    if (kind_ == NormKind::WeightedL1) require_dim(m, weights_.size(), what);
  }

  Scalar eval(ConstRef u) const {
    check_dim(u.size(), "norm eval");
    switch (kind_) {
      case NormKind::L1: return u.template lpNorm<1>();
      case NormKind::L2: return u.norm();
      case NormKind::Linf: return u.template lpNorm<Eigen::Infinity>();
      case NormKind::WeightedL1: return (weights_.array() * u.array().abs()).sum();
    }
    return Scalar(0);
  }

  Scalar eval_dual(ConstRef u) const {
    check_dim(u.size(), "dual norm eval");
    switch (kind_) {
      case NormKind::L1: return u.template lpNorm<Eigen::Infinity>();
      case NormKind::L2: return u.norm();
      case NormKind::Linf: return u.template lpNorm<1>();
      case NormKind::WeightedL1: return (u.array().abs() / weights_.array()).maxCoeff();
    }
    return Scalar(0);
  }

  /// Euclidean projection onto {v : P*(v) <= radius}.
  VectorType project_dual_ball(ConstRef u, Scalar radius) const {
    check_dim(u.size(), "project_dual_ball");
    if (!(radius > 0)) throw InputError("project_dual_ball: radius must be positive");
    switch (kind_) {
      case NormKind::L1:
        return u.cwiseMax(-radius).cwiseMin(radius);
      case NormKind::L2: {
        const Scalar norm = u.norm();
        if (norm <= radius) return u;
        return (radius / norm) * u;
      }
      case NormKind::Linf:
        return project_l1_ball(u, radius);
      case NormKind::WeightedL1: {
        const VectorType bound = radius * weights_;
        return u.cwiseMax(-bound).cwiseMin(bound);
      }
    }
    return u;
  }

  /// argmax of sum(u_i d_i) over u >= 0 with P*(u) <= 1, for d >= 0.
  VectorType linear_maximizer(ConstRef d) const {
    check_dim(d.size(), "linear_maximizer");
    if ((d.array() < 0).any()) throw InputError("linear_maximizer: negative component");
    const Index m = d.size();
    VectorType u = VectorType::Zero(m);
    switch (kind_) {
      case NormKind::L1:
        for (Index i = 0; i < m; ++i) u(i) = d(i) > zero_cutoff<Scalar>() ? Scalar(1) : Scalar(0);
        break;
      case NormKind::L2: {
        const Scalar norm = d.norm();
        if (norm > 0) u = d / norm;
        break;
      }
      case NormKind::Linf: {
        Index best = 0;
        const Scalar top = d.maxCoeff(&best);  // first index on ties
        if (top > 0) u(best) = Scalar(1);
        break;
      }
      case NormKind::WeightedL1:
        for (Index i = 0; i < m; ++i) u(i) = d(i) > zero_cutoff<Scalar>() ? weights_(i) : Scalar(0);
        break;
    }
    return u;
  }

  /// P(1, ..., 1): the Lipschitz constant of the induced penalty.
  Scalar norm_of_ones(Index m) const {
    check_dim(m, "norm_of_ones");
    switch (kind_) {
      case NormKind::L1: return Scalar(m);
      case NormKind::L2: return std::sqrt(Scalar(m));
      case NormKind::Linf: return Scalar(1);
      case NormKind::WeightedL1: return weights_.sum();
    }
    return Scalar(0);
  }

  /// max{ ||u||_inf : P(u) = 1 }.
  Scalar dual_ball_shape_factor(Index m) const {
    check_dim(m, "dual_ball_shape_factor");
    if (kind_ == NormKind::WeightedL1) return Scalar(1) / weights_.minCoeff();
    return Scalar(1);
  }

  bool operator==(const AbsoluteNorm& other) const {
    return kind_ == other.kind_ && weights_.size() == other.weights_.size() &&
           (weights_.size() == 0 || weights_ == other.weights_);
  }

 private:
  AbsoluteNorm(NormKind kind, VectorType weights) : kind_(kind), weights_(std::move(weights)) {}

  NormKind kind_;
  VectorType weights_;
};

using AbsoluteNormd = AbsoluteNorm<double>;

}  // namespace exactpen
