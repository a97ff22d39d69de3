#pragma once

#include <cmath>
#include <random>

#include "doctest.h"
#include "padd/bundle.hpp"

namespace padd::testing {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool near(std::span<const double> a, std::span<const double> b, double tol) {
  return a.size() == b.size() && max_abs_diff(a, b) <= tol;
}

inline Vector uniform_point(std::mt19937_64& rng, const BoxDomain& X) {
  Vector x(X.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::uniform_real_distribution<double>(0.0, X.upper(i))(rng);
  return x;
}

}  // namespace padd::testing
