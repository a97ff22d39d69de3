#include <random>

#include "padd/equilibrium.hpp"
#include "padd/error.hpp"
#include "padd/hardness.hpp"
#include "padd/instances.hpp"
#include "padd/raygeom.hpp"
#include "testing.hpp"

using namespace padd;
using padd::testing::near;

namespace {

using F = FunctionExpr;

SolverConfig numeric_general() {
  SolverConfig cfg;
  cfg.ray.use_closed_form = false;
  return cfg;
}

void check_outcome_identities(const EquilibriumOutcome& out, const Instance& inst) {
  CHECK(near(out.buyer_surplus, evaluate(inst.value, out.bundle) - out.payment, 1e-12 * std::max(1.0, out.payment)));
  CHECK(out.seller_revenue >= -1e-9);
  if (out.trade()) {
    CHECK(near(out.seller_revenue, out.payment - evaluate(inst.cost, out.bundle), 1e-12 * std::max(1.0, out.payment)));
    CHECK(near(out.payment, ray_slope_sup(inst.cost, out.bundle).payment, 1e-9 * std::max(1.0, out.payment)));
    CHECK(near(LinearPrice(out.unit_prices).payment(out.bundle.coords()), out.payment, 1e-12 * std::max(1.0, out.payment)));
  } else {
    CHECK(out.payment == 0.0);
    CHECK(out.seller_revenue == 0.0);
    CHECK(out.bundle.is_zero());
  }
}

}  // namespace

TEST_CASE("solve_general: documented values") {
  const Instance a = fig2a_instance();
  const EquilibriumOutcome ga = solve_general(a.value, a.cost, a.domain, numeric_general());
  CHECK(near(ga.bundle[0], 4.0, 1e-3));
  CHECK(near(ga.payment, 32.0, 1e-2));
  CHECK(near(ga.buyer_surplus, 96.0, 1e-2));
  CHECK(near(ga.seller_revenue, 16.0, 1e-2));
  CHECK(ga.method == Method::general);

  const Instance b = fig2b_instance();
  const EquilibriumOutcome gb = solve_general(b.value, b.cost, b.domain, numeric_general());
  CHECK(near(gb.bundle[0], 16.0, 1e-3));
  CHECK(near(gb.payment, 4.0, 1e-6));
  CHECK(near(gb.buyer_surplus, 4.0, 1e-6));
  CHECK(near(gb.seller_revenue, 0.0, 1e-6));

  const F s = F::power(1.0, 0.5);
  const EquilibriumOutcome none = solve_general(s, s, BoxDomain(Vector{50.0}), numeric_general());
  CHECK_FALSE(none.trade());
  CHECK(none.buyer_surplus == 0.0);
}

TEST_CASE("solve_convex: documented values") {
  const Instance a = fig2a_instance();
  const EquilibriumOutcome ca = solve_convex(a.value, a.cost, a.domain);
  CHECK(near(ca.bundle[0], 4.0, 1e-6));
  CHECK(near(ca.payment, 32.0, 1e-6));
  CHECK(near(ca.unit_prices[0], 8.0, 1e-6));
  CHECK(near(ca.seller_revenue, bregman(a.cost, Bundle{0.0}, ca.bundle), 1e-9));
  CHECK(ca.method == Method::convex_closed_form);

  const Instance e = example1_instance();
  const EquilibriumOutcome ce = solve_convex(e.value, e.cost, e.domain);
  CHECK(near(ce.bundle[0], 0.81, 1e-4));
  CHECK(near(ce.payment, 1.3122, 1e-4));
  CHECK(near(ce.seller_revenue, 0.6561, 1e-4));

  const EquilibriumOutcome lin = solve_convex(F::power(10.0, 0.5), F::affine(Vector{2.0}), BoxDomain(Vector{50.0}));
  CHECK(near(lin.bundle[0], 6.25, 1e-6));
  CHECK(near(lin.payment, 12.5, 1e-6));
  CHECK(near(lin.seller_revenue, 0.0, 1e-9));
}

TEST_CASE("solve_concave: documented values") {
  const Instance b = fig2b_instance();
  const EquilibriumOutcome cb = solve_concave(b.value, b.cost, b.domain);
  CHECK(near(cb.bundle[0], 16.0, 1e-6));
  CHECK(near(cb.payment, 4.0, 1e-9));
  CHECK(near(cb.unit_prices[0], 0.25, 1e-9));
  CHECK(near(cb.buyer_surplus, 4.0, 1e-9));
  CHECK(near(cb.seller_revenue, 0.0, 1e-9));
  CHECK(cb.method == Method::concave_closed_form);

  const F s = F::power(3.0, 0.5);
  CHECK_FALSE(solve_concave(s, s, BoxDomain(Vector{10.0})).trade());

  SolverConfig cfg;
  cfg.backend = Backend::vertices;
  const GraphInstance p3(3, {{0, 1}, {1, 2}});
  const EquilibriumOutcome mis =
      solve_concave(F::affine(Vector{1.0, 1.0, 1.0}), build_cost(p3), BoxDomain::cube(3, 1.0), cfg);
  CHECK(mis.buyer_surplus == 2.0);
  CHECK(mis.bundle == Bundle{1.0, 0.0, 1.0});
}

TEST_CASE("solvers: errors") {
  const Instance a = fig2a_instance();
  CHECK_THROWS_AS(solve_general(a.cost, a.cost, a.domain), PreconditionError);  // v convex
  CHECK_THROWS_AS(solve_convex(a.value, F::power(1.0, 0.5), a.domain), PreconditionError);
  CHECK_THROWS_AS(solve_concave(a.value, a.cost, a.domain), PreconditionError);
  CHECK_THROWS_AS(solve_general(F::affine(Vector{1.0}, 1.0), a.cost, a.domain), PreconditionError);  // v(0) != 0

  const F v5 = F::affine(Vector{1.0, 1.0, 1.0, 1.0, 1.0});
  const F c5 = F::power_sum(Vector(5, 1.0), Vector(5, 0.5));
  try {
    solve_general(v5, c5, BoxDomain::cube(5, 1.0));
    FAIL("expected a dimension error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("dimension > 4") != std::string::npos);
  }
  SolverConfig cfg;
  cfg.backend = Backend::vertices;
  CHECK_THROWS_AS(solve_concave(F::power_sum(Vector(5, 1.0), Vector(5, 0.5)), c5, BoxDomain::cube(5, 1.0), cfg),
                  PreconditionError);  // vertex backend needs linear v
  CHECK(solve_concave(v5, c5, BoxDomain::cube(5, 4.0), cfg).trade());
}

TEST_CASE("solve_auto dispatches on the cost shape") {
  CHECK(solve_auto(fig2a_instance().value, fig2a_instance().cost, fig2a_instance().domain).method ==
        Method::convex_closed_form);
  CHECK(solve_auto(fig2b_instance().value, fig2b_instance().cost, fig2b_instance().domain).method ==
        Method::concave_closed_form);
  const F general_cost = F::sum({F::power(2.0, 0.5), F::power(0.25, 2.0)});
  CHECK(solve_auto(F::power(8.0, 0.5), general_cost, BoxDomain(Vector{20.0})).method == Method::general);
}

TEST_CASE("fixed_bundle_optimal: documented values") {
  const Instance a = fig2a_instance();
  const FixedBundleResult r = fixed_bundle_optimal(a.value, a.cost, Bundle{4.0});
  CHECK(r.payment == 32.0);
  CHECK(r.surplus == 96.0);
  CHECK(evaluate(r.imitative.as_function(), Vector{4.0}) == 32.0);

  const Instance b = fig2b_instance();
  const FixedBundleResult rb = fixed_bundle_optimal(b.value, b.cost, Bundle{16.0});
  CHECK(rb.payment == 4.0);
  CHECK(rb.surplus == 4.0);

  const FixedBundleResult r1 = fixed_bundle_optimal(a.value, a.cost, Bundle{1.0});
  CHECK(r1.payment == 2.0);
  RaySlopeOptions grid;
  grid.use_closed_form = false;
  CHECK(near(fixed_bundle_optimal(a.value, a.cost, Bundle{1.0}, grid).payment, 2.0, 1e-5));

  CHECK_THROWS_AS(fixed_bundle_optimal(a.value, a.cost, Bundle{0.0}), PreconditionError);
  CHECK_THROWS_AS(fixed_bundle_optimal(F::power_sum({1.0, 1.0}, {0.5, 0.5}), F::power_sum({1.0, 1.0}, {2.0, 2.0}),
                                       Bundle{1.0, 0.0}),
                  PreconditionError);
}

TEST_CASE("ImitativeValue invariants") {
  const ImitativeValue u(Bundle{2.0, 4.0}, 6.0);
  const F f = u.as_function();
  CHECK(evaluate(f, Vector{2.0, 4.0}) == 6.0);
  CHECK(evaluate(f, Vector{0.0, 0.0}) == 0.0);
  CHECK(is_concave(f.shape()));
  CHECK_THROWS_AS(ImitativeValue(Bundle{0.0, 0.0}, 1.0), PreconditionError);
  CHECK_THROWS_AS(ImitativeValue(Bundle{1.0}, -1.0), PreconditionError);
}

TEST_CASE("verify_equilibrium: documented cases") {
  const Instance a = fig2a_instance();
  const EquilibriumOutcome out = solve_auto(a.value, a.cost, a.domain);
  const VerificationReport ok = verify_equilibrium(out, a.value, a.cost, a.domain);
  CHECK(ok.all_pass());
  CHECK(ok.checks.size() == 3);

  // 10% under the supremum: serving a fraction close to the whole bundle is more profitable
  EquilibriumOutcome cheap = make_outcome(a.value, a.cost, out.bundle, 0.9 * out.payment, Method::general);
  const VerificationReport bad = verify_equilibrium(cheap, a.value, a.cost, a.domain);
  CHECK_FALSE(bad.checks[0].pass);
  CHECK(bad.checks[0].worst_violation > 0.0);
  CHECK_FALSE(bad.all_pass());

  const F s = F::power(1.0, 0.5);
  const EquilibriumOutcome none = solve_auto(s, s, BoxDomain(Vector{10.0}));
  CHECK(verify_equilibrium(none, s, s, BoxDomain(Vector{10.0})).all_pass());
}

TEST_CASE("make_outcome: splits, projection and errors") {
  const F v = F::power_sum({3.0, 2.0}, {0.5, 0.5});
  const F c = F::power_sum({1.0, 1.0}, {2.0, 2.0});
  const EquilibriumOutcome o = make_outcome(v, c, Bundle{2.0, 4.0}, 6.0, Method::fixed_bundle, Vector{0.25, 0.75});
  CHECK(near(o.unit_prices, Vector{0.75, 1.125}, 1e-15));
  CHECK(near(o.price_split, Vector{0.25, 0.75}, 0.0));

  // an absent good gets no weight and a zero price
  const EquilibriumOutcome p = make_outcome(v, c, Bundle{2.0, 0.0}, 6.0, Method::fixed_bundle);
  CHECK(near(p.unit_prices, Vector{3.0, 0.0}, 0.0));
  CHECK(near(p.price_split, Vector{1.0, 0.0}, 0.0));
  REQUIRE(p.imitative.has_value());
  CHECK(evaluate(p.imitative->as_function(), Vector{2.0, 0.0}) == 6.0);
  CHECK_THROWS_AS(make_outcome(v, c, Bundle{2.0, 0.0}, 6.0, Method::fixed_bundle, Vector{0.5, 0.5}),
                  PreconditionError);
  CHECK_THROWS_AS(make_outcome(v, c, Bundle{2.0, 4.0}, 6.0, Method::fixed_bundle, Vector{0.5, 0.6}),
                  PreconditionError);
}

TEST_CASE("method tags round-trip") {
  for (Method m : {Method::general, Method::convex_closed_form, Method::concave_closed_form, Method::fixed_bundle}) {
    CHECK(method_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(method_from_string("simplex"), ParseError);
}

TEST_CASE("catalog: outcome identities, revenue sign, verification") {
  for (const auto& inst : catalog_instances()) {
    CAPTURE(inst.name);
    const EquilibriumOutcome out = solve_auto(inst.value, inst.cost, inst.domain);
    check_outcome_identities(out, inst);
    if (inst.cost.shape() == Shape::concave) CHECK(near(out.seller_revenue, 0.0, 1e-6));
    CHECK(verify_equilibrium(out, inst.value, inst.cost, inst.domain).all_pass());
  }
}

TEST_CASE("property: general and specialized solvers agree") {
  for (const auto& inst : catalog_instances()) {
    CAPTURE(inst.name);
    const EquilibriumOutcome special = solve_auto(inst.value, inst.cost, inst.domain);
    // the numeric ray route in 1-D; closed-form payments through the general maximizer in 2-D
    const SolverConfig cfg = inst.domain.dim() == 1 ? numeric_general() : SolverConfig{};
    const EquilibriumOutcome gen = solve_general(inst.value, inst.cost, inst.domain, cfg);
    CHECK(max_abs_diff(special.bundle.coords(), gen.bundle.coords()) <= 1e-3);
    CHECK(near(special.payment, gen.payment, 1e-4 * std::max(1.0, special.payment)));
    CHECK(near(special.buyer_surplus, gen.buyer_surplus, 1e-4 * std::max(1.0, special.payment)));
    CHECK(near(special.seller_revenue, gen.seller_revenue, 1e-4 * std::max(1.0, special.payment)));
  }
}

TEST_CASE("property: imitation dominates truthful reporting") {
  for (const auto& inst : catalog_instances()) {
    CAPTURE(inst.name);
    const EquilibriumOutcome out = solve_auto(inst.value, inst.cost, inst.domain);
    const SellerSolution truthful = seller_optimal_linear_price(inst.value, inst.cost, inst.domain);
    const double honest = evaluate(inst.value, truthful.bundle) - truthful.price.payment(truthful.bundle.coords());
    CHECK(out.buyer_surplus >= honest - 1e-6);
  }
}

TEST_CASE("property: joint scaling of value and cost") {
  for (const auto& inst : catalog_instances()) {
    if (inst.domain.dim() != 1) continue;
    CAPTURE(inst.name);
    const EquilibriumOutcome base = solve_auto(inst.value, inst.cost, inst.domain);
    for (double s : {0.5, 3.0}) {
      const F sv = F::scale(s, inst.value);
      const F sc = F::scale(s, inst.cost);
      // objective scales pointwise on the grid, so the maximizers match
      for (int k = 1; k <= 200; ++k) {
        const Vector x{inst.domain.upper(0) * k / 200.0};
        const double f = surplus_objective(inst.value, inst.cost, x, {});
        CHECK(near(surplus_objective(sv, sc, x, {}), s * f, 1e-9 * std::max(1.0, std::abs(s * f))));
      }
      const EquilibriumOutcome scaled = solve_auto(sv, sc, inst.domain);
      const double tol = 1e-9 * std::max(1.0, s * base.payment);
      CHECK(near(scaled.bundle.coords(), base.bundle.coords(), 1e-6));
      if (scaled.bundle == base.bundle) {
        CHECK(near(scaled.payment, s * base.payment, tol));
        CHECK(near(scaled.buyer_surplus, s * base.buyer_surplus, tol));
        CHECK(near(scaled.seller_revenue, s * base.seller_revenue, tol));
      }
    }
  }
}

TEST_CASE("property: the Leontief imitation is recovered by the seller") {
  for (const auto& inst : catalog_instances()) {
    CAPTURE(inst.name);
    const EquilibriumOutcome out = solve_auto(inst.value, inst.cost, inst.domain);
    if (!out.trade()) continue;
    const SellerSolution s = seller_optimal_linear_price(out.imitative->as_function(), inst.cost, inst.domain);
    CHECK(s.verified);
    double xs = 1.0;
    for (double e : out.bundle.coords()) xs = std::max(xs, e);
    CHECK(max_abs_diff(s.bundle.coords(), out.bundle.coords()) <= 1e-3 * xs);
    CHECK(near(s.price.payment(s.bundle.coords()), out.payment, 1e-6 * std::max(1.0, out.payment)));
  }
}
