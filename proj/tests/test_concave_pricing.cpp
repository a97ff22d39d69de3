#include <cmath>
#include <random>

#include "padd/concave_pricing.hpp"
#include "padd/error.hpp"
#include "padd/instances.hpp"
#include "padd/raygeom.hpp"
#include "testing.hpp"

using namespace padd;
using padd::testing::near;

namespace {

using F = FunctionExpr;

void check_same_leontief(const ImitativeValue& a, const ImitativeValue& b) {
  CHECK(a.anchor() == b.anchor());
  CHECK(a.payment() == b.payment());
}

}  // namespace

TEST_CASE("best_concave_price: documented values") {
  const BoxDomain X(Vector{100.0});
  const ConcavePriceResponse a = best_concave_price(F::leontief({16.0}, 4.0), F::power(1.0, 0.5), X);
  CHECK(near(a.bundle[0], 16.0, 1e-6));
  CHECK(near(a.revenue, 0.0, 1e-9));
  CHECK(evaluate(a.price, Vector{16.0}) == 4.0);

  const ConcavePriceResponse z = best_concave_price(F::affine(Vector{0.0}), F::power(1.0, 2.0), X);
  CHECK(z.bundle.is_zero());
  CHECK(z.revenue == 0.0);

  // truthful report: 32 / sqrt(x) = 2x at the interior maximizer
  const F v = F::power(64.0, 0.5);
  const ConcavePriceResponse t = best_concave_price(v, F::power(1.0, 2.0), X);
  const double x = t.bundle[0];
  CHECK(near(x, std::pow(256.0, 1.0 / 3.0), 1e-4));
  CHECK(std::abs(32.0 / std::sqrt(x) - 2.0 * x) < 1e-6);
  CHECK(near(t.revenue, 64.0 * std::sqrt(x) - x * x, 1e-12));
  CHECK(evaluate(t.price, Vector{x}) == evaluate(v, Vector{x}));
}

TEST_CASE("best_concave_price: errors") {
  const BoxDomain X(Vector{10.0});
  CHECK_THROWS_AS(best_concave_price(F::power(1.0, 2.0), F::power(1.0, 2.0), X), PreconditionError);
  CHECK_THROWS_AS(best_concave_price(F::power(1.0, 0.5), F::power(1.0, 2.0), BoxDomain(Vector{1.0, 1.0})),
                  PreconditionError);
}

TEST_CASE("concave_fop_optimal: documented values") {
  const ImitativeValue b = concave_fop_optimal(F::power(4.0, 0.25), F::power(1.0, 0.5), Bundle{16.0});
  CHECK(b.anchor() == Bundle{16.0});
  CHECK(b.payment() == 4.0);
  const ImitativeValue a = concave_fop_optimal(F::power(64.0, 0.5), F::power(1.0, 2.0), Bundle{4.0});
  CHECK(a.payment() == 32.0);
  const F lin = F::affine(Vector{1.5, 0.5});
  const ImitativeValue l = concave_fop_optimal(F::affine(Vector{3.0, 3.0}), lin, Bundle{2.0, 6.0});
  CHECK(near(l.payment(), evaluate(lin, Vector{2.0, 6.0}), 1e-15));
  CHECK_THROWS_AS(concave_fop_optimal(F::power(1.0, 0.5), F::power(1.0, 2.0), Bundle{0.0}), PreconditionError);
  CHECK_THROWS_AS(concave_fop_optimal(lin, lin, Bundle{1.0, 0.0}), PreconditionError);
}

TEST_CASE("property: concave and linear fixed-bundle imitations coincide exactly") {
  std::mt19937_64 rng(301);
  const auto catalog = catalog_instances();
  for (int trial = 0; trial < 50; ++trial) {
    const Instance& inst = catalog[trial % catalog.size()];
    Vector x = padd::testing::uniform_point(rng, inst.domain);
    for (double& e : x) e = std::max(e, 1e-3);
    CAPTURE(inst.name);
    check_same_leontief(concave_fop_optimal(inst.value, inst.cost, Bundle(x)),
                        fixed_bundle_optimal(inst.value, inst.cost, Bundle(x)).imitative);
  }
}

TEST_CASE("property: the imitation makes its own bundle the seller's best (1000 samples)") {
  std::mt19937_64 rng(302);
  for (const auto& inst : catalog_instances()) {
    CAPTURE(inst.name);
    const EquilibriumOutcome out = solve_auto(inst.value, inst.cost, inst.domain);
    if (!out.trade()) continue;
    const ImitativeValue u = concave_fop_optimal(inst.value, inst.cost, out.bundle);
    const F uf = u.as_function();
    const double at = evaluate(uf, out.bundle) - evaluate(inst.cost, out.bundle);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const Vector z = padd::testing::uniform_point(rng, inst.domain);
      worst = std::max(worst, evaluate(uf, z) - evaluate(inst.cost, z) - at);
    }
    CHECK(worst <= 1e-9 * std::max(1.0, u.payment()));
  }
}

TEST_CASE("equivalence_check: documented instances") {
  const Instance a = fig2a_instance();
  const EquivalenceReport ra = equivalence_check(a.value, a.cost, a.domain);
  CHECK(ra.agree);
  CHECK(near(ra.concave.payment, 32.0, 1e-3));

  const Instance b = fig2b_instance();
  const EquivalenceReport rb = equivalence_check(b.value, b.cost, b.domain);
  CHECK(rb.agree);
  CHECK(near(rb.concave.bundle[0], 16.0, 1e-3));
  CHECK(near(rb.concave.seller_revenue, 0.0, 1e-6));

  const F s = F::power(1.0, 0.5);
  const EquivalenceReport rs = equivalence_check(s, s, BoxDomain(Vector{50.0}));
  CHECK(rs.agree);
  CHECK_FALSE(rs.linear.trade());
  CHECK(rs.concave.bundle.is_zero());
}

TEST_CASE("property: linear and concave pricing agree on the whole catalog") {
  for (const auto& inst : catalog_instances()) {
    CAPTURE(inst.name);
    const EquivalenceReport r = equivalence_check(inst.value, inst.cost, inst.domain);
    CHECK(r.agree);
    CHECK(r.bundle_gap <= kEquivalenceBundleTol);
    CHECK(r.payment_gap <= kEquivalenceValueTol);
    CHECK(r.surplus_gap <= kEquivalenceValueTol);
    CHECK(r.revenue_gap <= kEquivalenceValueTol);
  }
}

TEST_CASE("PricingClass: extra functions are validated") {
  CHECK(PricingClass::linear_only().tag() == PricingTag::linear_only);
  CHECK(PricingClass::all_concave().extra().empty());
  const PricingClass ok = PricingClass::linear_plus({F::power(1.0, 0.5)});
  CHECK(ok.tag() == PricingTag::linear_plus_extra);
  CHECK(ok.extra().size() == 1);
  CHECK_THROWS_AS(PricingClass::linear_plus({F::power(1.0, 2.0)}), PreconditionError);
  CHECK_THROWS_AS(PricingClass::linear_plus({F::affine(Vector{1.0}, 0.5)}), PreconditionError);
  CHECK(to_string(PricingTag::linear_plus_extra) == "linear_plus_extra");
}

TEST_CASE("respond_in_class: linear wins ties") {
  const F u = F::power(1.0, 0.5);
  const F c = F::power(1.0, 2.0);
  const BoxDomain X(Vector{10.0});
  const ClassResponse lin = respond_in_class(u, u, c, X, PricingClass::linear_only());
  CHECK(lin.tag == "linear");
  CHECK(near(lin.revenue, 0.1875, 1e-4));
  // an extra that is a scaled-down linear price earns less
  const ClassResponse same = respond_in_class(u, u, c, X, PricingClass::linear_plus({F::affine(Vector{0.5})}));
  CHECK(same.tag == "linear");
}

TEST_CASE("overfit_scenario: epsilon = 0.05") {
  const OverfitReport r = overfit_scenario(0.05);
  CHECK(near(r.linear_bundle[0], 0.81, 1e-4));
  CHECK(near(r.linear_payment, 1.3122, 1e-4));
  CHECK(near(r.linear_revenue, 0.6561, 1e-4));
  CHECK(near(r.linear_response_revenue, 0.1875, 1e-4));
  CHECK(near(r.rich_revenue, 0.1939, 1e-12));
  CHECK(near(r.rich_payment, 0.85, 1e-12));
  CHECK(near(r.rich_buyer_surplus, 7.25, 1e-12));
  CHECK(near(r.rich_revenue_numeric, r.rich_revenue, 1e-4));
  CHECK(r.chosen_price_tag == "extra:0");
  CHECK(r.buyer_choice == "sqrt");
  CHECK(r.strict_decrease);
  CHECK(r.rich_revenue < r.linear_revenue);
  CHECK(r.rich_buyer_surplus > r.linear_buyer_surplus);
}

TEST_CASE("overfit_scenario: the construction fails for large epsilon") {
  for (double eps : {0.1, 0.2}) {
    const OverfitReport r = overfit_scenario(eps);
    CHECK(near(r.rich_revenue, 0.2439 - eps, 1e-12));
    CHECK(r.chosen_price_tag == "linear");
    CHECK_FALSE(r.strict_decrease);
    CHECK(r.note.find("prefers linear") != std::string::npos);
  }
  for (double eps : {-1.0, 0.0, kOverfitEpsilonMax, 0.3}) CHECK_THROWS_AS(overfit_scenario(eps), PreconditionError);
}

TEST_CASE("property: rich revenue is 0.2439 - epsilon across the valid range") {
  for (int k = 1; k < 24; ++k) {
    const double eps = 0.01 * k;
    CAPTURE(eps);
    const OverfitReport r = overfit_scenario(eps);
    CHECK(near(r.rich_revenue, 0.2439 - eps, 1e-12));
    CHECK(r.strict_decrease == (0.2439 - eps > 0.1875));
  }
}
