#include "padd/concave_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "padd/error.hpp"
#include "padd/optimize.hpp"
#include "padd/raygeom.hpp"

namespace padd {
namespace {

bool all_zero(const Vector& x) {
  return std::all_of(x.begin(), x.end(), [](double e) { return e == 0.0; });
}

void check_price_function(const FunctionExpr& p) {
  require(p.valid(), "empty pricing function");
  require(is_concave(p.shape()), "extra pricing functions must be concave");
  require(evaluate(p, Vector(p.dim(), 0.0)) == 0.0, "extra pricing functions must satisfy p(0) = 0");
}

// Payment of the FOP solution for any non-zero target; goods outside the
// support are simply not part of the anchor.
double fop_payment(const FunctionExpr& c, const Vector& xbar, const RaySlopeOptions& ray) {
  return ray_slope_sup(c, Bundle(xbar), ray).payment;
}

}  // namespace

std::string_view to_string(PricingTag t) {
  switch (t) {
    case PricingTag::linear_only:
      return "linear_only";
    case PricingTag::all_concave:
      return "all_concave";
    case PricingTag::linear_plus_extra:
      return "linear_plus_extra";
  }
  return "linear_only";
}

PricingClass PricingClass::linear_plus(std::vector<FunctionExpr> extra) {
  for (const auto& p : extra) check_price_function(p);
  return PricingClass(PricingTag::linear_plus_extra, std::move(extra));
}

ConcavePriceResponse best_concave_price(const FunctionExpr& u, const FunctionExpr& c, const BoxDomain& X,
                                        const ResponseOptions& opts) {
  require(u.valid() && c.valid() && u.dim() == X.dim() && c.dim() == X.dim(),
          "dimension mismatch among value, cost and domain");
  require(is_concave(u.shape()), "best_concave_price requires a concave reported value");
  const std::size_t d = X.dim();
  require(evaluate(u, Vector(d, 0.0)) == 0.0, "reported value must satisfy u(0) = 0");

  auto revenue = [&](const Vector& x) { return evaluate(u, x) - evaluate(c, x); };
  Vector best_x;
  double best = 0.0;
  if (const auto* l = std::get_if<LeontiefNode>(&u.node().kind)) {
    double t_max = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (l->anchor[i] > 0.0) t_max = std::min(t_max, X.upper(i) / l->anchor[i]);
    }
    auto along = [&](double t) {
      Vector x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = t * l->anchor[i];
      return x;
    };
    const ScalarMax r = grid_golden_max([&](double t) { return revenue(along(t)); }, 0.0, t_max, opts.ray_grid_n,
                                        TiePreference::lex_largest);
    best_x = along(r.x);
    best = r.value;
  } else {
    require(d <= kMaxGridDim, "dimension > 4 is not supported by the grid solvers");
    BoxMaxOptions bo;
    bo.grid_per_dim = opts.grid_per_dim != 0 ? opts.grid_per_dim : default_grid_per_dim(d);
    bo.prefer = TiePreference::lex_largest;
    const BoxMax r = maximize_over_box(revenue, X, bo);
    best_x = r.x;
    best = r.value;
  }
  if (best < 0.0) return ConcavePriceResponse{u, Bundle::zeros(d), 0.0};
  return ConcavePriceResponse{u, Bundle(best_x), best};
}

ImitativeValue concave_fop_optimal(const FunctionExpr& v, const FunctionExpr& c, const Bundle& xbar,
                                   const RaySlopeOptions& ray) {
  require(v.valid() && c.valid() && v.dim() == xbar.dim() && c.dim() == xbar.dim(),
          "dimension mismatch among value, cost and bundle");
  require(xbar.strictly_positive(), "target bundle must be strictly positive in every coordinate");
  return ImitativeValue(xbar, fop_payment(c, xbar.vec(), ray));
}

EquivalenceReport equivalence_check(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                                    const SolverConfig& cfg) {
  EquivalenceReport report;
  report.linear = solve_auto(v, c, X, cfg);

  const std::size_t d = X.dim();
  require(d <= kMaxGridDim, "dimension > 4 is not supported by the grid solvers");
  BoxMaxOptions bo;
  bo.grid_per_dim = cfg.grid_per_dim != 0 ? cfg.grid_per_dim : default_grid_per_dim(d);
  bo.starts = cfg.starts;
  bo.tie_tol = cfg.tie_tol;
  bo.prefer = TiePreference::lex_smallest;
  BoxMax outer = maximize_over_box(
      [&](const Vector& x) { return all_zero(x) ? 0.0 : evaluate(v, x) - fop_payment(c, x, cfg.ray); }, X, bo);
  const Vector origin(d, 0.0);
  if (better_point(0.0, origin, outer.value, outer.x, TiePreference::lex_smallest, cfg.tie_tol)) {
    outer = {origin, 0.0};
  }

  RichOutcome& rich = report.concave;
  rich.bundle = Bundle::zeros(d);
  if (!all_zero(outer.x)) {
    const ImitativeValue u(Bundle(outer.x), fop_payment(c, outer.x, cfg.ray));
    const ConcavePriceResponse resp = best_concave_price(u.as_function(), c, X, cfg.response);
    rich.bundle = resp.bundle;
    rich.payment = evaluate(resp.price, resp.bundle);
    rich.buyer_surplus = evaluate(v, resp.bundle) - rich.payment;
    rich.seller_revenue = resp.revenue;
  }

  const EquilibriumOutcome& lin = report.linear;
  report.bundle_gap = max_abs_diff(lin.bundle.coords(), rich.bundle.coords());
  report.payment_gap = std::abs(lin.payment - rich.payment);
  report.surplus_gap = std::abs(lin.buyer_surplus - rich.buyer_surplus);
  report.revenue_gap = std::abs(lin.seller_revenue - rich.seller_revenue);
  report.agree = report.bundle_gap <= kEquivalenceBundleTol && report.payment_gap <= kEquivalenceValueTol &&
                 report.surplus_gap <= kEquivalenceValueTol && report.revenue_gap <= kEquivalenceValueTol;
  return report;
}

ClassResponse respond_in_class(const FunctionExpr& u, const FunctionExpr& v, const FunctionExpr& c,
                               const BoxDomain& X, const PricingClass& cls, const ResponseOptions& opts) {
  require(cls.tag() != PricingTag::all_concave, "use best_concave_price for the all_concave class");
  const SellerSolution lin = seller_optimal_linear_price(u, c, X, opts);
  ClassResponse best;
  best.tag = "linear";
  best.bundle = lin.bundle;
  best.payment = lin.bundle.is_zero() ? 0.0 : lin.price.payment(lin.bundle.coords());
  best.revenue = lin.revenue;
  best.buyer_surplus = evaluate(v, lin.bundle) - best.payment;

  for (std::size_t k = 0; k < cls.extra().size(); ++k) {
    const FunctionExpr& p = cls.extra()[k];
    const Bundle x = buyer_best_response_to(u, p, X, c, opts);
    const double payment = evaluate(p, x);
    const double revenue = payment - evaluate(c, x);
    if (revenue > best.revenue) {
      best = ClassResponse{"extra:" + std::to_string(k), x, payment, revenue, evaluate(v, x) - payment};
    }
  }
  return best;
}

OverfitReport overfit_scenario(double epsilon, const SolverConfig& cfg) {
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < kOverfitEpsilonMax,
          "epsilon must lie in (0, 0.2439)");
  const FunctionExpr v = FunctionExpr::min_of_affine({{Vector{10.0}, 0.0}, {Vector{0.0}, 8.1}});
  const FunctionExpr c = FunctionExpr::power(1.0, 2.0);
  const BoxDomain X(Vector{10.0});
  const double slope = 5.0 / 9.0;
  const FunctionExpr u = FunctionExpr::power(1.0, 0.5);
  const FunctionExpr tilde =
      FunctionExpr::min_of({u, FunctionExpr::affine(Vector{slope}, 9.0 / 20.0 - epsilon)});

  OverfitReport r;
  r.epsilon = epsilon;

  const EquilibriumOutcome lin = solve_auto(v, c, X, cfg);
  r.linear_bundle = lin.bundle;
  r.linear_payment = lin.payment;
  r.linear_revenue = lin.seller_revenue;
  r.linear_buyer_surplus = lin.buyer_surplus;

  const PricingClass cls = PricingClass::linear_plus({tilde});
  const ClassResponse vs_sqrt = respond_in_class(u, v, c, X, cls, cfg.response);
  r.linear_response_revenue = seller_optimal_linear_price(u, c, X, cfg.response).revenue;

  // u = sqrt(x) meets the affine piece tangentially where 1 / (2 sqrt(x)) = 5/9
  const double tangent = 1.0 / (4.0 * slope * slope);
  r.rich_bundle = Bundle{tangent};
  r.rich_payment = evaluate(tilde, r.rich_bundle);
  r.rich_revenue = r.rich_payment - evaluate(c, r.rich_bundle);
  r.rich_buyer_surplus = evaluate(v, r.rich_bundle) - r.rich_payment;
  const Bundle numeric = buyer_best_response_to(u, tilde, X, c, cfg.response);
  r.rich_revenue_numeric = evaluate(tilde, numeric) - evaluate(c, numeric);

  r.chosen_price_tag = r.rich_revenue > r.linear_response_revenue ? "extra:0" : "linear";

  // the buyer compares the linear-class optimum with the sqrt(x) imitation
  const FunctionExpr leontief = lin.imitative ? lin.imitative->as_function() : FunctionExpr::affine(Vector{0.0});
  const ClassResponse vs_leontief = respond_in_class(leontief, v, c, X, cls, cfg.response);
  const bool prefers_sqrt = vs_sqrt.buyer_surplus > vs_leontief.buyer_surplus;
  r.buyer_choice = prefers_sqrt ? "sqrt" : "linear_optimum";
  r.rich_equilibrium_u = prefers_sqrt ? u : leontief;

  r.strict_decrease = r.chosen_price_tag != "linear" && prefers_sqrt && r.rich_revenue < r.linear_revenue &&
                      r.rich_buyer_surplus > r.linear_buyer_surplus;
  if (!r.strict_decrease) {
    r.note = "seller prefers linear pricing against u = sqrt(x) (0.2439 - epsilon <= 0.1875); "
             "the revenue decrease does not instantiate for this epsilon";
  } else {
    r.note = "buyer imitates u = sqrt(x); imitations analysed: linear-class optimum and sqrt(x) only";
  }
  return r;
}

}  // namespace padd
