#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "padd/bundle.hpp"
#include "padd/funcs.hpp"
#include "padd/graph.hpp"

namespace padd {

inline constexpr std::size_t kMaxBruteForceNodes = 20;

/// c(x) = sum_i min(sum_j a_ji x_j, x_i)
FunctionExpr build_cost(const GraphInstance& g);

/// U(x) = sum_i x_i - c(x) on [0,1]^d.
double surplus_U(const GraphInstance& g, std::span<const double> x);

/// Sign of U(x) - U(y), computed in exact rational arithmetic.
int compare_surplus_exact(const GraphInstance& g, std::span<const double> x, std::span<const double> y);

struct BinaryMax {
  double value = 0.0;
  /// lexicographically smallest maximizer
  Bundle argmax;
};

/// Maximum of U over the binary vertices of [0,1]^d.
BinaryMax brute_force_max(const GraphInstance& g);

/// Size of a maximum independent set, by subset enumeration.
std::size_t mis_brute_force(const GraphInstance& g);

/// Per-coordinate rounding status: fixed to 0, fixed to 1, or still a
/// Bernoulli variable with success probability p_i.
class RoundingState {
 public:
  enum class Status { fractional, zero, one };

  explicit RoundingState(std::span<const double> probabilities);

  std::size_t size() const { return status_.size(); }
  Status status(std::size_t i) const { return status_[i]; }
  bool fixed(std::size_t i) const { return status_[i] != Status::fractional; }
  /// marginal probability of a one (0 or 1 once fixed)
  double probability(std::size_t i) const;
  /// Fixing an already fixed coordinate throws.
  void fix(std::size_t i, bool value);
  Bundle to_bundle() const;

 private:
  std::vector<Status> status_;
  Vector probability_;
};

/// E[U(X)] for independent X_i ~ Bernoulli(p_i):
/// sum_i p_i * prod_{j in N(i)} (1 - p_j).
double expected_surplus(const GraphInstance& g, const RoundingState& state);

/// Method of conditional expectations: fixes coordinates in index order, each
/// to the value with the larger exact conditional expectation of U. The
/// returned binary vector satisfies U(x') >= U(xbar).
Bundle derandomize(const GraphInstance& g, std::span<const double> xbar);

}  // namespace padd
