#include "padd/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "padd/error.hpp"
#include "padd/optimize.hpp"

namespace padd {
namespace {

void check_game(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X) {
  require(v.valid() && c.valid(), "empty function expression");
  require(v.dim() == X.dim() && c.dim() == X.dim(), "dimension mismatch among value, cost and domain");
  require(is_concave(v.shape()), "value function must be concave, got " + std::string(to_string(v.shape())));
  const Vector zero(X.dim(), 0.0);
  require(evaluate(v, zero) == 0.0, "value function must satisfy v(0) = 0");
  require(evaluate(c, zero) == 0.0, "cost function must satisfy c(0) = 0");
}

void check_grid_dim(const BoxDomain& X) {
  require(X.dim() <= kMaxGridDim, "dimension > 4 is not supported by the grid solvers (d = " +
                                      std::to_string(X.dim()) + ")");
}

bool all_zero(const Vector& x) {
  return std::all_of(x.begin(), x.end(), [](double e) { return e == 0.0; });
}

BoxMax maximize(const std::function<double(const Vector&)>& f, const BoxDomain& X, const SolverConfig& cfg) {
  if (cfg.backend == Backend::vertices) {
    return maximize_over_vertices(f, X, TiePreference::lex_smallest, cfg.tie_tol);
  }
  check_grid_dim(X);
  BoxMaxOptions bo;
  bo.grid_per_dim = cfg.grid_per_dim != 0 ? cfg.grid_per_dim : default_grid_per_dim(X.dim());
  bo.starts = cfg.starts;
  bo.tie_tol = cfg.tie_tol;
  bo.prefer = TiePreference::lex_smallest;
  BoxMax best = maximize_over_box(f, X, bo);
  // no trade (F = 0) wins every tie
  if (better_point(0.0, Vector(X.dim(), 0.0), best.value, best.x, TiePreference::lex_smallest, cfg.tie_tol)) {
    best = {Vector(X.dim(), 0.0), 0.0};
  }
  return best;
}

}  // namespace

ImitativeValue::ImitativeValue(Bundle anchor, double payment) : anchor_(std::move(anchor)), payment_(payment) {
  require(!anchor_.is_zero(), "imitative value needs a non-zero anchor bundle");
  require(std::isfinite(payment_) && payment_ >= 0.0, "imitative payment must be finite and >= 0");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::general:
      return "general";
    case Method::convex_closed_form:
      return "convex_closed_form";
    case Method::concave_closed_form:
      return "concave_closed_form";
    case Method::fixed_bundle:
      return "fixed_bundle";
  }
  return "general";
}

Method method_from_string(std::string_view s) {
  for (Method m : {Method::general, Method::convex_closed_form, Method::concave_closed_form, Method::fixed_bundle}) {
    if (to_string(m) == s) return m;
  }
  throw ParseError("unknown method tag \"" + std::string(s) + "\"");
}

double surplus_objective(const FunctionExpr& v, const FunctionExpr& c, const Vector& x, const RaySlopeOptions& ray) {
  if (all_zero(x)) return 0.0;
  return evaluate(v, x) - ray_slope_sup(c, Bundle(x), ray).payment;
}

EquilibriumOutcome make_outcome(const FunctionExpr& v, const FunctionExpr& c, const Bundle& bundle, double payment,
                                Method method, const Vector& lambda) {
  const std::size_t d = bundle.dim();
  EquilibriumOutcome out;
  out.bundle = bundle;
  out.method = method;
  if (bundle.is_zero()) {
    out.price_split = uniform_split(d);
    out.unit_prices.assign(d, 0.0);
    return out;
  }

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < d; ++i) {
    if (bundle[i] > 0.0) support.push_back(i);
  }
  Vector split(d, 0.0);
  if (lambda.empty()) {
    for (std::size_t i : support) split[i] = 1.0 / static_cast<double>(support.size());
  } else {
    require(lambda.size() == d, "price split dimension does not match the bundle");
    split = lambda;
    for (std::size_t i = 0; i < d; ++i) {
      require(bundle[i] > 0.0 || split[i] == 0.0, "price split puts weight on a good that is not bought");
    }
  }
  // prices live on the goods actually bought; absent goods are free
  Vector sub_x;
  Vector sub_split;
  for (std::size_t i : support) {
    sub_x.push_back(bundle[i]);
    sub_split.push_back(split[i]);
  }
  const LinearPrice sub = optimal_price_family(Bundle(sub_x), payment, sub_split);
  out.unit_prices.assign(d, 0.0);
  for (std::size_t k = 0; k < support.size(); ++k) out.unit_prices[support[k]] = sub[k];

  out.payment = payment;
  out.imitative.emplace(bundle, payment);
  out.price_split = std::move(split);
  out.buyer_surplus = evaluate(v, bundle) - payment;
  out.seller_revenue = payment - evaluate(c, bundle);
  return out;
}

EquilibriumOutcome solve_general(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                                 const SolverConfig& cfg) {
  check_game(v, c, X);
  check_grid_dim(X);
  const BoxMax best = maximize([&](const Vector& x) { return surplus_objective(v, c, x, cfg.ray); }, X, cfg);
  const Bundle xstar(best.x);
  if (xstar.is_zero()) return make_outcome(v, c, xstar, 0.0, Method::general, cfg.lambda);
  return make_outcome(v, c, xstar, ray_slope_sup(c, xstar, cfg.ray).payment, Method::general, cfg.lambda);
}

EquilibriumOutcome solve_convex(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                                const SolverConfig& cfg) {
  check_game(v, c, X);
  require(is_convex(c.shape()), "solve_convex requires a convex cost, got " + std::string(to_string(c.shape())));
  auto payment = [&](const Vector& x) { return dot(gradient(c, x), x); };
  const BoxMax best = maximize(
      [&](const Vector& x) { return all_zero(x) ? 0.0 : evaluate(v, x) - payment(x); }, X, cfg);
  const Bundle xstar(best.x);
  return make_outcome(v, c, xstar, xstar.is_zero() ? 0.0 : payment(best.x), Method::convex_closed_form, cfg.lambda);
}

EquilibriumOutcome solve_concave(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                                 const SolverConfig& cfg) {
  check_game(v, c, X);
  require(is_concave(c.shape()), "solve_concave requires a concave cost, got " + std::string(to_string(c.shape())));
  if (cfg.backend == Backend::vertices) {
    require(v.shape() == Shape::linear, "vertex enumeration needs a linear value function");
  }
  const BoxMax best = maximize([&](const Vector& x) { return evaluate(v, x) - evaluate(c, x); }, X, cfg);
  const Bundle xstar(best.x);
  return make_outcome(v, c, xstar, xstar.is_zero() ? 0.0 : evaluate(c, xstar), Method::concave_closed_form,
                      cfg.lambda);
}

EquilibriumOutcome solve_auto(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                              const SolverConfig& cfg) {
  const Shape s = c.shape();
  if (is_convex(s)) return solve_convex(v, c, X, cfg);
  if (s == Shape::concave) return solve_concave(v, c, X, cfg);
  return solve_general(v, c, X, cfg);
}

FixedBundleResult fixed_bundle_optimal(const FunctionExpr& v, const FunctionExpr& c, const Bundle& xbar,
                                       const RaySlopeOptions& ray) {
  require(v.valid() && c.valid() && v.dim() == xbar.dim() && c.dim() == xbar.dim(),
          "dimension mismatch among value, cost and bundle");
  require(xbar.strictly_positive(), "fixed bundle must be strictly positive in every coordinate");
  const double payment = ray_slope_sup(c, xbar, ray).payment;
  return FixedBundleResult{payment, ImitativeValue(xbar, payment), evaluate(v, xbar) - payment};
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

VerificationReport verify_equilibrium(const EquilibriumOutcome& outcome, const FunctionExpr& v,
                                      const FunctionExpr& c, const BoxDomain& X, std::size_t sample_n,
                                      const SolverConfig& cfg) {
  require(v.dim() == X.dim() && c.dim() == X.dim() && outcome.bundle.dim() == X.dim(),
          "dimension mismatch between outcome and problem");
  VerificationReport report;
  VerificationCheck feas{"seller_feasibility", true, 0.0, {}};
  VerificationCheck buyer{"buyer_response", true, 0.0, {}};
  VerificationCheck seller{"seller_price", true, 0.0, {}};
  if (!outcome.trade()) {
    feas.detail = buyer.detail = seller.detail = "no trade";
    report.checks = {feas, buyer, seller};
    return report;
  }

  const Bundle& xstar = outcome.bundle;
  const double p = outcome.payment;
  const double scale = std::max(1.0, std::abs(p));
  const double lhs = p - evaluate(c, xstar);
  const std::size_t n = std::max<std::size_t>(sample_n, 2);
  Vector buf(xstar.dim());
  for (std::size_t k = 0; k < n; ++k) {
    // alphas in [0, 1): k / n
    const double alpha = static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = alpha * xstar[i];
    const double violation = (alpha * p - evaluate(c, buf)) - lhs;
    feas.worst_violation = std::max(feas.worst_violation, violation);
  }
  feas.pass = feas.worst_violation <= 1e-9 * scale;

  const FunctionExpr u = outcome.imitative->as_function();
  const Bundle br = buyer_best_response(u, LinearPrice(outcome.unit_prices), X, c, cfg.response);
  double xscale = 1.0;
  for (double e : xstar.coords()) xscale = std::max(xscale, e);
  buyer.worst_violation = max_abs_diff(br.coords(), xstar.coords());
  buyer.pass = buyer.worst_violation <= cfg.response.verify_tol * xscale;

  const SellerSolution sol = seller_optimal_linear_price(u, c, X, cfg.response);
  const double charged = sol.price.payment(sol.bundle.coords());
  seller.worst_violation = std::abs(charged - p);
  seller.pass = sol.verified && seller.worst_violation <= 1e-6 * scale;
  std::ostringstream msg;
  msg << "seller charges " << charged << " for the recovered bundle";
  seller.detail = msg.str();

  report.checks = {feas, buyer, seller};
  return report;
}

}  // namespace padd
