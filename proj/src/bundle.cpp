#include "padd/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "padd/error.hpp"

namespace padd {

Bundle::Bundle(Vector coords) : coords_(std::move(coords)) {
  require(!coords_.empty(), "bundle dimension must be >= 1");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) throw PreconditionError("bundle coordinate " + std::to_string(i) + " is not finite");
    require(coords_[i] >= 0.0, "negative coordinate in bundle");
  }
}

bool Bundle::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double v) { return v == 0.0; });
}

bool Bundle::strictly_positive() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double v) { return v > 0.0; });
}

Bundle Bundle::scaled(double alpha) const {
  Vector out(coords_);
  for (double& v : out) v *= alpha;
  return Bundle(std::move(out));
}

BoxDomain::BoxDomain(Vector upper) : upper_(std::move(upper)) {
  require(!upper_.empty(), "domain dimension must be >= 1");
  for (double b : upper_) {
    require(std::isfinite(b) && b > 0.0, "domain upper bounds must be finite and positive");
  }
}

bool BoxDomain::contains(std::span<const double> x, double tol) const {
  if (x.size() != upper_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < -tol || x[i] > upper_[i] + tol) return false;
  }
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dimension mismatch in dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Vector linspace_upper(double upper, std::size_t n) {
  require(n >= 2, "grid needs at least two points");
  Vector out(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) out[k] = upper * static_cast<double>(k) / denom;
  out.back() = upper;
  return out;
}

}  // namespace padd
