#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padd/bundle.hpp"
#include "padd/funcs.hpp"
#include "padd/raygeom.hpp"
#include "padd/response.hpp"

namespace padd {

/// Leontief value function payment * min_i{x_i / anchor_i, 1}. Goods with a
/// zero anchor coordinate are absent from the bundle and carry no value.
class ImitativeValue {
 public:
  ImitativeValue(Bundle anchor, double payment);

  const Bundle& anchor() const { return anchor_; }
  double payment() const { return payment_; }
  FunctionExpr as_function() const { return FunctionExpr::leontief(anchor_.vec(), payment_); }

 private:
  Bundle anchor_;
  double payment_;
};

enum class Method { general, convex_closed_form, concave_closed_form, fixed_bundle };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct EquilibriumOutcome {
  Bundle bundle;
  /// total payment p* for the whole bundle
  double payment = 0.0;
  std::optional<ImitativeValue> imitative;
  Vector price_split;
  /// per-unit prices under price_split; they sum to `payment` against `bundle`
  Vector unit_prices;
  double buyer_surplus = 0.0;
  double seller_revenue = 0.0;
  Method method = Method::general;

  bool trade() const { return imitative.has_value(); }
};

enum class Backend { grid, vertices };

struct SolverConfig {
  /// 0 selects the per-dimension default
  std::size_t grid_per_dim = 0;
  std::size_t starts = 4;
  /// relative gap under which two values of the outer objective tie
  double tie_tol = 1e-12;
  RaySlopeOptions ray;
  ResponseOptions response;
  /// price split; empty means uniform over the goods actually bought
  Vector lambda;
  Backend backend = Backend::grid;
};

/// F(x) = v(x) - ray_slope_sup(c, x), with F(0) = 0.
double surplus_objective(const FunctionExpr& v, const FunctionExpr& c, const Vector& x, const RaySlopeOptions& ray);

/// Maximizes v(x) - ray_slope_sup(c, x) over X for any monotone cost.
EquilibriumOutcome solve_general(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                                 const SolverConfig& cfg = {});
/// Convex cost: maximizes v(x) - x . grad c(x).
EquilibriumOutcome solve_convex(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                                const SolverConfig& cfg = {});
/// Concave cost: maximizes v(x) - c(x); the seller earns nothing.
EquilibriumOutcome solve_concave(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                                 const SolverConfig& cfg = {});
/// Dispatches on the shape of c.
EquilibriumOutcome solve_auto(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                              const SolverConfig& cfg = {});

struct FixedBundleResult {
  double payment = 0.0;
  ImitativeValue imitative;
  double surplus = 0.0;
};

/// Cheapest payment that keeps the seller from serving a fraction of xbar,
/// and the Leontief value that induces it.
FixedBundleResult fixed_bundle_optimal(const FunctionExpr& v, const FunctionExpr& c, const Bundle& xbar,
                                       const RaySlopeOptions& ray = {});

/// Outcome assembled from a chosen bundle and payment.
EquilibriumOutcome make_outcome(const FunctionExpr& v, const FunctionExpr& c, const Bundle& bundle, double payment,
                                Method method, const Vector& lambda = {});

struct VerificationCheck {
  std::string name;
  bool pass = true;
  double worst_violation = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool all_pass() const;
};

/// Checks the three levels of the equilibrium:
///   seller_feasibility  p* - c(x*) >= alpha p* - c(alpha x*) on sample_n alphas
///   buyer_response      the buyer's response to the split price is x*
///   seller_price        the seller's optimal linear price against u* charges p*
VerificationReport verify_equilibrium(const EquilibriumOutcome& outcome, const FunctionExpr& v,
                                      const FunctionExpr& c, const BoxDomain& X, std::size_t sample_n = 10001,
                                      const SolverConfig& cfg = {});

}  // namespace padd
