#pragma once

#include <cstddef>
#include <optional>

#include "padd/bundle.hpp"
#include "padd/funcs.hpp"

namespace padd {

/// sup over alpha in [0,1) of (c(x) - c(alpha x)) / (1 - alpha).
struct RaySlopeResult {
  double payment = 0.0;
  std::optional<double> attained_alpha;
  /// the supremum is approached as alpha -> 1 and not attained
  bool is_limit = false;
};

struct RaySlopeOptions {
  std::size_t grid_n = 10001;
  double eps_limit = 1e-6;
  /// use the closed forms for convex and concave costs when available
  bool use_closed_form = true;
  /// tolerance for the monotonicity check along the ray
  double monotone_tol = 1e-9;
};

/// Payment level that makes serving the full bundle x at least as attractive
/// to the seller as serving any fraction alpha of it.
///
/// Convex costs use x . grad c(x) (a limit as alpha -> 1), concave costs use
/// c(x) (attained at alpha = 0). Everything else, or use_closed_form = false,
/// takes the maximum over an alpha grid on [0, 1 - eps_limit] together with a
/// second-order one-sided estimate of the derivative of c along the ray at x.
RaySlopeResult ray_slope_sup(const FunctionExpr& c, const Bundle& x, const RaySlopeOptions& opts = {});

/// The grid route alone, regardless of the shape of c.
RaySlopeResult ray_slope_sup_numeric(const FunctionExpr& c, const Bundle& x,
                                     const RaySlopeOptions& opts = {});

/// D_f(z, x) = f(z) - f(x) - grad f(x) . (z - x). Requires f differentiable at x.
double bregman(const FunctionExpr& f, const Bundle& z, const Bundle& x);

}  // namespace padd
