#include "padd/raygeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "padd/error.hpp"

namespace padd {
namespace {

void check_ray_args(const FunctionExpr& c, const Bundle& x, const RaySlopeOptions& opts) {
  require(c.valid() && c.dim() == x.dim(), "dimension mismatch between cost and bundle");
  require(!x.is_zero(), "ray slope is undefined at the zero bundle");
  require(opts.grid_n >= 2, "ray grid needs at least two points");
  require(opts.eps_limit > 0.0 && opts.eps_limit < 1.0, "eps_limit must lie in (0, 1)");
  require(evaluate(c, Bundle::zeros(x.dim())) == 0.0, "cost must satisfy c(0) = 0");
}

// c(alpha x) through a reusable buffer
class RayEvaluator {
 public:
  RayEvaluator(const FunctionExpr& c, const Bundle& x) : c_(c), x_(x), buf_(x.dim()) {}
  double operator()(double alpha) {
    for (std::size_t i = 0; i < buf_.size(); ++i) buf_[i] = alpha * x_[i];
    return evaluate(c_, buf_);
  }

 private:
  const FunctionExpr& c_;
  const Bundle& x_;
  Vector buf_;
};

}  // namespace

RaySlopeResult ray_slope_sup_numeric(const FunctionExpr& c, const Bundle& x, const RaySlopeOptions& opts) {
  check_ray_args(c, x, opts);
  RayEvaluator along(c, x);
  const double cx = evaluate(c, x);
  const double top = 1.0 - opts.eps_limit;

  RaySlopeResult out;
  double prev_cost = -std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  double best_alpha = 0.0;
  for (std::size_t k = 0; k < opts.grid_n; ++k) {
    const double alpha = top * static_cast<double>(k) / static_cast<double>(opts.grid_n - 1);
    const double ca = along(alpha);
    require(ca >= prev_cost - opts.monotone_tol * std::max(1.0, std::abs(ca)),
            "cost is not monotone non-decreasing along the ray");
    prev_cost = ca;
    const double slope = (cx - ca) / (1.0 - alpha);
    if (slope > best) {
      best = slope;
      best_alpha = alpha;
    }
  }
  require(cx >= prev_cost - opts.monotone_tol * std::max(1.0, std::abs(cx)),
          "cost is not monotone non-decreasing along the ray");

  // d/dalpha c(alpha x) at alpha = 1 from the left, second order
  const double h = opts.eps_limit;
  const double c1 = along(1.0 - h);
  const double c2 = along(1.0 - 2.0 * h);
  const double limit = (3.0 * cx - 4.0 * c1 + c2) / (2.0 * h);

  const bool at_top = best_alpha == top;
  if (limit > best || at_top) {
    out.payment = std::max(best, limit);
    out.is_limit = true;
  } else {
    out.payment = best;
    out.attained_alpha = best_alpha;
  }
  return out;
}

RaySlopeResult ray_slope_sup(const FunctionExpr& c, const Bundle& x, const RaySlopeOptions& opts) {
  check_ray_args(c, x, opts);
  if (opts.use_closed_form) {
    const Shape s = c.shape();
    if (is_concave(s)) {
      // (c(x) - c(ax)) / (1 - a) <= c(x) for concave c with c(0) = 0
      return RaySlopeResult{evaluate(c, x), 0.0, false};
    }
    if (s == Shape::convex) {
      const Vector g = gradient(c, x.coords());
      return RaySlopeResult{dot(g, x.coords()), std::nullopt, true};
    }
  }
  return ray_slope_sup_numeric(c, x, opts);
}

double bregman(const FunctionExpr& f, const Bundle& z, const Bundle& x) {
  require(f.valid() && f.dim() == z.dim() && f.dim() == x.dim(), "dimension mismatch in bregman");
  const Vector g = gradient(f, x.coords());
  double lin = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) lin += g[i] * (z[i] - x[i]);
  return evaluate(f, z) - evaluate(f, x) - lin;
}

}  // namespace padd
