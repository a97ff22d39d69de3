#pragma once

#include <cstddef>
#include <functional>

#include "padd/bundle.hpp"
#include "padd/funcs.hpp"

namespace padd {

/// Per-unit price vector p in R^d_+.
class LinearPrice {
 public:
  LinearPrice() = default;
  explicit LinearPrice(Vector units);

  std::size_t dim() const { return units_.size(); }
  double operator[](std::size_t i) const { return units_[i]; }
  const Vector& units() const { return units_; }
  double payment(std::span<const double> x) const { return dot(units_, x); }

 private:
  Vector units_;
};

struct SellerSolution {
  LinearPrice price;
  Bundle bundle;
  double revenue = 0.0;
  /// the buyer's best response to `price` reproduces `bundle`
  bool verified = false;
};

struct ResponseOptions {
  /// absolute utility gap under which the buyer is indifferent
  double tie_tol = 1e-8;
  /// 0 selects the per-dimension default (2001, 201, 51, 21)
  std::size_t grid_per_dim = 0;
  /// points on the anchor ray for Leontief buyers
  std::size_t ray_grid_n = 2001;
  /// best response must land within verify_tol * max(1, |x|_inf) of the candidate
  double verify_tol = 1e-3;
  double gradient_cap = kDefaultGradientCap;
  /// candidates tried (in decreasing revenue order) before giving up
  std::size_t max_verifications = 400;
};

inline constexpr std::size_t kMaxGridDim = 4;

/// Bundle maximizing u(x) - p.x over X; among bundles within tie_tol of the
/// best, the one maximizing p.x - c(x) (larger bundles win exact ties).
Bundle buyer_best_response(const FunctionExpr& u, const LinearPrice& price, const BoxDomain& X,
                           const FunctionExpr& c, const ResponseOptions& opts = {});

/// Same tie rule against an arbitrary pricing function P: the buyer maximizes
/// u(x) - P(x) and the seller's tie-break objective is P(x) - c(x).
Bundle buyer_best_response_to(const FunctionExpr& u, const FunctionExpr& pricing, const BoxDomain& X,
                              const FunctionExpr& c, const ResponseOptions& opts = {});

/// Revenue-maximizing linear price against the reported value function u.
///
/// For concave u every candidate bundle x is priced at grad_max(u, x) and kept
/// only if the buyer's best response to that price returns x. Non-concave u
/// falls back to a search over a price grid. When nothing verifies with
/// non-negative revenue the seller prices everything out (bundle 0,
/// revenue 0, verified = false).
SellerSolution seller_optimal_linear_price(const FunctionExpr& u, const FunctionExpr& c, const BoxDomain& X,
                                           const ResponseOptions& opts = {});

/// (lambda_1 p/x_1, ..., lambda_d p/x_d): every member charges exactly p for x.
LinearPrice optimal_price_family(const Bundle& xstar, double pstar, std::span<const double> lambda);

/// Uniform split (1/d, ..., 1/d).
Vector uniform_split(std::size_t dim);

}  // namespace padd
