#include <random>

#include "padd/error.hpp"
#include "padd/response.hpp"
#include "testing.hpp"

using namespace padd;
using padd::testing::near;

namespace {

using F = FunctionExpr;

struct Case {
  F u;
  LinearPrice price;
  BoxDomain X;
  F c;
};

std::vector<Case> response_cases() {
  return {
      {F::power(1.0, 0.5), LinearPrice(Vector{1.0}), BoxDomain(Vector{10.0}), F::power(1.0, 2.0)},
      {F::power(64.0, 0.5), LinearPrice(Vector{8.0}), BoxDomain(Vector{100.0}), F::power(1.0, 2.0)},
      {F::leontief({4.0}, 32.0), LinearPrice(Vector{8.0}), BoxDomain(Vector{100.0}), F::power(1.0, 2.0)},
      {F::leontief({4.0}, 32.0), LinearPrice(Vector{7.0}), BoxDomain(Vector{100.0}), F::power(1.0, 2.0)},
      {F::min_of_affine({{Vector{10.0}, 0.0}, {Vector{0.0}, 8.1}}), LinearPrice(Vector{3.0}), BoxDomain(Vector{10.0}),
       F::power(1.0, 2.0)},
      {F::power_sum({3.0, 2.0}, {0.5, 0.5}), LinearPrice(Vector{1.0, 0.5}), BoxDomain(Vector{10.0, 10.0}),
       F::power_sum({1.0, 1.0}, {2.0, 2.0})},
      {F::leontief({2.0, 4.0}, 6.0), LinearPrice(Vector{1.5, 0.75}), BoxDomain(Vector{10.0, 10.0}),
       F::power_sum({1.0, 1.0}, {2.0, 2.0})},
      {F::min_of_affine({{Vector{5.0, 0.0}, 0.0}, {Vector{0.0, 5.0}, 0.0}}), LinearPrice(Vector{1.0, 2.0}),
       BoxDomain(Vector{5.0, 5.0}), F::affine(Vector{1.0, 1.0})},
  };
}

double utility(const Case& k, const Vector& x) { return evaluate(k.u, x) - k.price.payment(x); }

}  // namespace

TEST_CASE("buyer_best_response: documented values") {
  const Bundle a = buyer_best_response(F::leontief({4.0}, 32.0), LinearPrice(Vector{8.0}), BoxDomain(Vector{100.0}),
                                       F::power(1.0, 2.0));
  CHECK(near(a[0], 4.0, 1e-9));

  const Bundle b = buyer_best_response(F::power(1.0, 0.5), LinearPrice(Vector{0.0}), BoxDomain(Vector{7.0}),
                                       F::power(1.0, 2.0));
  // price 0 makes the seller prefer the cheapest bundle inside the 1e-8 indifference band
  CHECK(near(b[0], 7.0, 1e-6));
  const Bundle b2 = buyer_best_response(F::power_sum({1.0, 2.0}, {0.5, 0.3}), LinearPrice(Vector{0.0, 0.0}),
                                        BoxDomain(Vector{3.0, 5.0}), F::power_sum({1.0, 1.0}, {2.0, 2.0}));
  CHECK(near(b2.coords(), Vector{3.0, 5.0}, 1e-6));

  // sqrt(x) at unit price: 1 / (4 p^2) = 0.25; the 1e-8 indifference band allows ~1e-4 drift toward revenue
  const Bundle c = buyer_best_response(F::power(1.0, 0.5), LinearPrice(Vector{1.0}), BoxDomain(Vector{10.0}),
                                       F::power(1.0, 2.0));
  CHECK(near(c[0], 0.25, 1e-3));
}

TEST_CASE("buyer_best_response: errors") {
  CHECK_THROWS_AS(buyer_best_response(F::power(1.0, 0.5), LinearPrice(Vector{1.0, 1.0}), BoxDomain(Vector{10.0}),
                                      F::power(1.0, 2.0)),
                  PreconditionError);
  CHECK_THROWS_AS(buyer_best_response(F::power(1.0, 0.5), LinearPrice(Vector{1.0}), BoxDomain(Vector{10.0, 1.0}),
                                      F::power(1.0, 2.0)),
                  PreconditionError);
  CHECK_THROWS_AS(LinearPrice(Vector{-1.0}), PreconditionError);
  CHECK_THROWS_AS(BoxDomain(Vector{0.0}), PreconditionError);
}

TEST_CASE("property: best-response optimality on 1000 domain samples") {
  std::mt19937_64 rng(101);
  for (const auto& k : response_cases()) {
    const Bundle x = buyer_best_response(k.u, k.price, k.X, k.c);
    const double ux = utility(k, x.vec());
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) worst = std::max(worst, utility(k, padd::testing::uniform_point(rng, k.X)) - ux);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("property: seller-favoring tie-break among near-optimal samples") {
  std::mt19937_64 rng(102);
  const ResponseOptions opts;
  for (const auto& k : response_cases()) {
    const Bundle x = buyer_best_response(k.u, k.price, k.X, k.c, opts);
    const double ux = utility(k, x.vec());
    const double rx = k.price.payment(x.coords()) - evaluate(k.c, x);
    // points along the segment to x and uniform samples
    for (int s = 0; s < 1000; ++s) {
      Vector z = s % 2 ? padd::testing::uniform_point(rng, k.X) : x.scaled(s / 1000.0).vec();
      if (utility(k, z) < ux - opts.tie_tol) continue;
      const double rz = k.price.payment(z) - evaluate(k.c, z);
      CHECK(rx >= rz - 1e-6 * std::max(1.0, std::abs(rz)));
    }
  }
}

TEST_CASE("seller_optimal_linear_price: documented values") {
  const SellerSolution a = seller_optimal_linear_price(F::power(1.0, 0.5), F::power(1.0, 2.0), BoxDomain(Vector{10.0}));
  CHECK(a.verified);
  CHECK(near(a.price[0], 1.0, 1e-3));
  CHECK(near(a.bundle[0], 0.25, 1e-3));
  CHECK(near(a.revenue, 0.1875, 1e-4));

  const SellerSolution b =
      seller_optimal_linear_price(F::leontief({4.0}, 32.0), F::power(1.0, 2.0), BoxDomain(Vector{100.0}));
  CHECK(b.verified);
  CHECK(near(b.price[0], 8.0, 1e-9));
  CHECK(near(b.bundle[0], 4.0, 1e-9));
  CHECK(near(b.revenue, 16.0, 1e-9));

  const SellerSolution c = seller_optimal_linear_price(F::power(1.0, 0.5), F::power(1.0, 0.5), BoxDomain(Vector{100.0}));
  CHECK(near(c.revenue, 0.0, 1e-6));
  CHECK(near(c.bundle[0], 0.0, 1e-6));
}

TEST_CASE("seller revenue invariant: revenue = price.bundle - c(bundle) >= 0") {
  for (const auto& k : response_cases()) {
    const SellerSolution s = seller_optimal_linear_price(k.u, k.c, k.X);
    CHECK(s.revenue >= 0.0);
    CHECK(near(s.revenue, s.bundle.is_zero() ? 0.0 : s.price.payment(s.bundle.coords()) - evaluate(k.c, s.bundle),
               1e-12 * std::max(1.0, s.revenue)));
  }
}

TEST_CASE("property: verified prices are the maximal supergradient at the bundle") {
  for (const auto& k : response_cases()) {
    const SellerSolution s = seller_optimal_linear_price(k.u, k.c, k.X);
    if (!s.verified) continue;
    CHECK(near(s.price.units(), grad_max(k.u, s.bundle.coords()).gradient, 1e-9));
  }
}

TEST_CASE("property: imitating the cost leaves the seller nothing") {
  const std::vector<std::pair<F, BoxDomain>> costs{
      {F::power(1.0, 0.5), BoxDomain(Vector{100.0})},
      {F::power(2.0, 0.6), BoxDomain(Vector{20.0})},
      {F::power_sum({4.0, 1.0}, {0.5, 0.5}), BoxDomain(Vector{10.0, 10.0})},
      {F::power(1.0, 2.0), BoxDomain(Vector{100.0})},
      {F::power(1.0, 3.0), BoxDomain(Vector{10.0})},
      {F::sum({F::power(1.0, 2.0), F::affine(Vector{2.0})}), BoxDomain(Vector{20.0})},
  };
  for (const auto& [c, X] : costs) {
    const SellerSolution s = seller_optimal_linear_price(c, c, X);
    CHECK(near(s.revenue, 0.0, 1e-6));
    CHECK(near(s.bundle.coords(), Vector(X.dim(), 0.0), 1e-6));
  }
}

TEST_CASE("imitating a linear cost: zero-sum at every bundle") {
  // every bundle earns 0 here; trade wins zero-revenue ties, so the bundle itself is not pinned
  const F c = F::affine(Vector{2.0});
  const BoxDomain X(Vector{50.0});
  const SellerSolution s = seller_optimal_linear_price(c, c, X);
  CHECK(near(s.revenue, 0.0, 1e-9));
  CHECK(near(evaluate(c, s.bundle) - s.price.payment(s.bundle.coords()), 0.0, 1e-9));
}

TEST_CASE("optimal_price_family: documented values") {
  CHECK(near(optimal_price_family(Bundle{4.0}, 32.0, Vector{1.0}).units(), Vector{8.0}, 0.0));
  CHECK(near(optimal_price_family(Bundle{2.0, 4.0}, 6.0, Vector{1.0, 0.0}).units(), Vector{3.0, 0.0}, 0.0));
  const LinearPrice half = optimal_price_family(Bundle{2.0, 4.0}, 6.0, Vector{0.5, 0.5});
  CHECK(near(half.units(), Vector{1.5, 0.75}, 0.0));
  CHECK(half.payment(Vector{2.0, 4.0}) == 6.0);
}

TEST_CASE("optimal_price_family: errors") {
  CHECK_THROWS_AS(optimal_price_family(Bundle{0.0, 4.0}, 6.0, Vector{0.5, 0.5}), PreconditionError);
  CHECK_THROWS_AS(optimal_price_family(Bundle{2.0, 4.0}, 6.0, Vector{0.6, 0.6}), PreconditionError);
  CHECK_THROWS_AS(optimal_price_family(Bundle{2.0, 4.0}, 6.0, Vector{1.5, -0.5}), PreconditionError);
  CHECK_THROWS_AS(optimal_price_family(Bundle{2.0, 4.0}, 6.0, Vector{1.0}), PreconditionError);
}

TEST_CASE("property: payment invariance across 50 random splits") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> pos(0.01, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + trial % 4;
    Vector x(d);
    for (double& e : x) e = pos(rng);
    const double p = pos(rng) * 5.0;
    for (int s = 0; s < 50; ++s) {
      Vector lambda(d);
      double total = 0.0;
      for (double& l : lambda) total += (l = pos(rng));
      for (double& l : lambda) l /= total;
      CHECK(near(optimal_price_family(Bundle(x), p, lambda).payment(x), p, 1e-12 * std::max(1.0, p)));
    }
  }
}

TEST_CASE("seller search is deterministic across thread counts") {
  const F u = F::power_sum({3.0, 2.0}, {0.5, 0.5});
  const F c = F::power_sum({1.0, 1.0}, {2.0, 2.0});
  const BoxDomain X(Vector{10.0, 10.0});
  const SellerSolution a = seller_optimal_linear_price(u, c, X);
  const SellerSolution b = seller_optimal_linear_price(u, c, X);
  CHECK(a.bundle == b.bundle);
  CHECK(a.revenue == b.revenue);
}
