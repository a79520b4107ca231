#pragma once

#include "exactpen/common.hpp"

#include <cstdint>
#include <random>

namespace exactpen {

/// Seeded generator with platform-independent output.
///
/// std::mt19937_64 is bit-exact by standard; the distributions are written out
/// here because the std:: ones are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

  Vec normal_vector(Index n) {
    Vec out(n);
    for (Index i = 0; i < n; ++i) out(i) = normal();
    return out;
  }

  Vec uniform_vector(Index n, double lo, double hi) {
    Vec out(n);
    for (Index i = 0; i < n; ++i) out(i) = uniform(lo, hi);
    return out;
  }

  /// Uniformly distributed direction on the unit sphere.
  Vec unit_vector(Index n) {
    Vec v = normal_vector(n);
    const double norm = v.norm();
    return norm > 0 ? Vec(v / norm) : Vec(Vec::Unit(n, 0));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace exactpen
