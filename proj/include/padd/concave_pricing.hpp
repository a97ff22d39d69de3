#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "padd/bundle.hpp"
#include "padd/equilibrium.hpp"
#include "padd/funcs.hpp"
#include "padd/response.hpp"

namespace padd {

enum class PricingTag { linear_only, all_concave, linear_plus_extra };

std::string_view to_string(PricingTag t);

/// Pricing schemes available to the seller. linear_plus_extra adds a finite
/// list of concave, monotone pricing functions with p(0) = 0.
class PricingClass {
 public:
  static PricingClass linear_only() { return PricingClass(PricingTag::linear_only, {}); }
  static PricingClass all_concave() { return PricingClass(PricingTag::all_concave, {}); }
  static PricingClass linear_plus(std::vector<FunctionExpr> extra);

  PricingTag tag() const { return tag_; }
  const std::vector<FunctionExpr>& extra() const { return extra_; }

 private:
  PricingClass(PricingTag tag, std::vector<FunctionExpr> extra) : tag_(tag), extra_(std::move(extra)) {}
  PricingTag tag_;
  std::vector<FunctionExpr> extra_;
};

struct ConcavePriceResponse {
  FunctionExpr price;
  Bundle bundle;
  double revenue = 0.0;
};

/// The seller's best concave pricing function against a reported concave u
/// is u itself; the buyer is then indifferent everywhere and the seller's
/// tie-break picks the bundle maximizing u - c (larger bundles win ties).
ConcavePriceResponse best_concave_price(const FunctionExpr& u, const FunctionExpr& c, const BoxDomain& X,
                                        const ResponseOptions& opts = {});

/// Optimal imitative value for a fixed target bundle under concave pricing.
ImitativeValue concave_fop_optimal(const FunctionExpr& v, const FunctionExpr& c, const Bundle& xbar,
                                   const RaySlopeOptions& ray = {});

struct RichOutcome {
  Bundle bundle;
  double payment = 0.0;
  double buyer_surplus = 0.0;
  double seller_revenue = 0.0;
};

struct EquivalenceReport {
  EquilibriumOutcome linear;
  RichOutcome concave;
  double bundle_gap = 0.0;
  double payment_gap = 0.0;
  double surplus_gap = 0.0;
  double revenue_gap = 0.0;
  bool agree = false;
};

inline constexpr double kEquivalenceBundleTol = 1e-3;
inline constexpr double kEquivalenceValueTol = 1e-4;

/// Solves the game under all concave pricing schemes and under linear
/// pricing, and compares bundle, payment, surplus and revenue.
EquivalenceReport equivalence_check(const FunctionExpr& v, const FunctionExpr& c, const BoxDomain& X,
                                    const SolverConfig& cfg = {});

/// Seller's best member of a linear_plus_extra class against reported u.
struct ClassResponse {
  /// "linear" or "extra:<index>"
  std::string tag;
  Bundle bundle;
  double payment = 0.0;
  double revenue = 0.0;
  /// v(bundle) - payment under the buyer's true value v
  double buyer_surplus = 0.0;
};

/// Ties between the best linear price and an extra function favor linear.
ClassResponse respond_in_class(const FunctionExpr& u, const FunctionExpr& v, const FunctionExpr& c,
                               const BoxDomain& X, const PricingClass& cls, const ResponseOptions& opts = {});

struct OverfitReport {
  double epsilon = 0.0;
  /// linear-class equilibrium
  Bundle linear_bundle;
  double linear_payment = 0.0;
  double linear_revenue = 0.0;
  double linear_buyer_surplus = 0.0;
  /// seller's best linear response to the imitation u = sqrt(x)
  double linear_response_revenue = 0.0;
  /// response to u = sqrt(x) with the extra concave price
  Bundle rich_bundle;
  double rich_payment = 0.0;
  double rich_revenue = 0.0;
  double rich_buyer_surplus = 0.0;
  /// same quantities through the numeric best response (cross-check)
  double rich_revenue_numeric = 0.0;
  FunctionExpr rich_equilibrium_u;
  /// member of the augmented class the seller picks against u = sqrt(x)
  std::string chosen_price_tag;
  /// imitation the buyer prefers among the analysed candidates
  std::string buyer_choice;
  /// revenue falls and buyer surplus rises when the class is enlarged
  bool strict_decrease = false;
  std::string note;
};

inline constexpr double kOverfitEpsilonMax = 0.2439;

/// Instance with v = min(10x, 8.1), c = x^2, X = [0, 10] and the augmented
/// class {linear} + {min(sqrt(x), 5/9 x + 9/20 - epsilon)}.
OverfitReport overfit_scenario(double epsilon, const SolverConfig& cfg = {});

}  // namespace padd
