#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace padd {

using Vector = std::vector<double>;

/// Non-negative quantity vector of d goods.
class Bundle {
 public:
  Bundle() = default;
  explicit Bundle(Vector coords);
  Bundle(std::initializer_list<double> coords) : Bundle(Vector(coords)) {}

  static Bundle zeros(std::size_t dim) { return Bundle(Vector(dim, 0.0)); }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const Vector& vec() const { return coords_; }

  bool is_zero() const;
  bool strictly_positive() const;
  Bundle scaled(double alpha) const;

  friend bool operator==(const Bundle&, const Bundle&) = default;

 private:
  Vector coords_;
};

/// Axis-aligned feasible set [0, b_1] x ... x [0, b_d].
class BoxDomain {
 public:
  BoxDomain() = default;
  explicit BoxDomain(Vector upper);
  static BoxDomain cube(std::size_t dim, double upper) { return BoxDomain(Vector(dim, upper)); }

  std::size_t dim() const { return upper_.size(); }
  double upper(std::size_t i) const { return upper_[i]; }
  const Vector& uppers() const { return upper_; }
  bool contains(std::span<const double> x, double tol = 0.0) const;
  Bundle top() const { return Bundle(upper_); }

 private:
  Vector upper_;
};

double dot(std::span<const double> a, std::span<const double> b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// true when a precedes b lexicographically.
bool lex_less(std::span<const double> a, std::span<const double> b);

/// Evenly spaced points b*k/(n-1), k = 0..n-1, computed so endpoints are exact.
Vector linspace_upper(double upper, std::size_t n);

}  // namespace padd
