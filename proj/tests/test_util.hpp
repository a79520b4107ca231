#pragma once

#include "exactpen/common.hpp"

#include <doctest.h>

#include <initializer_list>

namespace testutil {

inline exactpen::Vec vec(std::initializer_list<double> values) {
  exactpen::Vec v(static_cast<exactpen::Index>(values.size()));
  exactpen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline void require_close(const exactpen::Vec& a, const exactpen::Vec& b, double tol) {
  REQUIRE(a.size() == b.size());
  CHECK((a - b).norm() <= tol);
}

}  // namespace testutil
