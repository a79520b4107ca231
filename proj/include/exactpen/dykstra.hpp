#pragma once

#include "exactpen/sets.hpp"

#include <string>
#include <vector>

namespace exactpen {

/// Raised when Dykstra's iteration exhausts its budget; carries the last state.
class DykstraFailure : public Error {
 public:
  DykstraFailure(const std::string& what, Vec last_iterate, std::vector<double> residuals,
                 double last_change, int iterations)
      : Error(what),
        last_iterate_(std::move(last_iterate)),
        residuals_(std::move(residuals)),
        last_change_(last_change),
        iterations_(iterations) {}

  const Vec& last_iterate() const { return last_iterate_; }
  const std::vector<double>& residuals() const { return residuals_; }
  double last_change() const { return last_change_; }
  int iterations() const { return iterations_; }

 private:
  Vec last_iterate_;
  std::vector<double> residuals_;
  double last_change_;
  int iterations_;
};

/// Projection onto the intersection of `sets` by Dykstra's alternating scheme.
///
/// Stops once a full sweep moves the iterate by at most `tol` and every set is
/// within `10 * tol` of it. Reference oracle for tests and metrics only.
template <typename Scalar>
Vector<Scalar> dykstra_project(const std::vector<SimpleSet<Scalar>>& sets,
                               const Vector<Scalar>& x, Scalar tol, int max_iter = 1000000) {
  if (sets.empty()) throw ConfigError("dykstra_project: no sets given");
  if (!(tol > 0)) throw InputError("dykstra_project: tol must be positive");
  for (const auto& s : sets) require_dim(s.dim(), x.size(), "dykstra_project set");
  require_finite(x, "dykstra_project");

  const std::size_t m = sets.size();
  std::vector<Vector<Scalar>> increments(m, Vector<Scalar>::Zero(x.size()));
  Vector<Scalar> current = x;
  Scalar change = 0;
  std::vector<Scalar> residuals(m, Scalar(0));

  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    const Vector<Scalar> start = current;
    for (std::size_t i = 0; i < m; ++i) {
      const Vector<Scalar> shifted = current + increments[i];
      current = sets[i].project(shifted);
      increments[i] = shifted - current;
    }
    change = (current - start).norm();
    Scalar worst = 0;
    for (std::size_t i = 0; i < m; ++i) {
      residuals[i] = distance(sets[i], current);
      worst = std::max(worst, residuals[i]);
    }
    if (change <= tol && worst <= Scalar(10) * tol) return current;
  }

  std::vector<double> report(residuals.begin(), residuals.end());
  throw DykstraFailure("dykstra_project: no convergence within " + std::to_string(max_iter) +
                           " sweeps",
                       current.template cast<double>(), std::move(report),
                       static_cast<double>(change), max_iter);
}

}  // namespace exactpen
