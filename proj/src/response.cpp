#include "padd/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <variant>

#include "padd/error.hpp"
#include "padd/optimize.hpp"

namespace padd {
namespace {

bool is_separable(const FunctionExpr& f) {
  const auto& k = f.node().kind;
  if (std::holds_alternative<PowerSumNode>(k) || std::holds_alternative<AffineNode>(k)) return true;
  if (const auto* s = std::get_if<ScaleNode>(&k)) return is_separable(s->child);
  if (const auto* s = std::get_if<SumNode>(&k)) {
    return std::all_of(s->children.begin(), s->children.end(), [](const auto& c) { return is_separable(c); });
  }
  return f.dim() == 1;
}

std::size_t grid_for(const ResponseOptions& opts, std::size_t dim) {
  return opts.grid_per_dim != 0 ? opts.grid_per_dim : default_grid_per_dim(dim);
}

void check_response_args(const FunctionExpr& u, const BoxDomain& X, const FunctionExpr& c) {
  require(u.valid() && c.valid(), "empty function expression");
  require(X.dim() >= 1, "empty domain");
  require(u.dim() == X.dim() && c.dim() == X.dim(), "dimension mismatch among value, cost and domain");
}

// Leontief buyer: only bundles t * anchor matter, so the problem reduces to the
// fraction t. Goods outside the anchor's support are never bought.
Bundle leontief_response(const LeontiefNode& l, const LinearPrice& price, const BoxDomain& X,
                         const FunctionExpr& c, const ResponseOptions& opts) {
  const std::size_t d = X.dim();
  double t_max = 1.0;
  double anchor_cost = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (l.anchor[i] == 0.0) continue;
    t_max = std::min(t_max, X.upper(i) / l.anchor[i]);
    anchor_cost += price[i] * l.anchor[i];
  }
  const double slope = l.level - anchor_cost;

  double lo = 0.0;
  double hi = t_max;
  if (slope > 0.0) {
    lo = std::max(0.0, t_max - opts.tie_tol / slope);
  } else if (slope < 0.0) {
    hi = std::min(t_max, opts.tie_tol / -slope);
  }

  Vector buf(d, 0.0);
  auto seller = [&](double t) {
    for (std::size_t i = 0; i < d; ++i) buf[i] = t * l.anchor[i];
    return t * anchor_cost - evaluate(c, buf);
  };
  const ScalarMax best = grid_golden_max(seller, lo, hi, opts.ray_grid_n, TiePreference::lex_largest);
  Vector x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = std::min(X.upper(i), best.x * l.anchor[i]);
  return Bundle(std::move(x));
}

// Discrete tie set on a grid: used for non-separable or non-concave buyers and
// for nonlinear pricing functions.
Bundle grid_response(const std::function<double(const Vector&)>& buyer,
                     const std::function<double(const Vector&)>& seller, const BoxDomain& X,
                     const ResponseOptions& opts) {
  const std::size_t d = X.dim();
  require(d <= kMaxGridDim, "dimension > 4 is not supported by the grid solvers");
  BoxMaxOptions bo;
  bo.grid_per_dim = grid_for(opts, d);
  bo.prefer = TiePreference::lex_largest;
  const BoxMax refined = maximize_over_box(buyer, X, bo);

  std::vector<Vector> axes;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    axes.push_back(linspace_upper(X.upper(i), bo.grid_per_dim));
    total *= axes.back().size();
  }
  auto point = [&](std::size_t k) {
    Vector x(d);
    for (std::size_t i = d; i-- > 0;) {
      x[i] = axes[i][k % axes[i].size()];
      k /= axes[i].size();
    }
    return x;
  };
  Vector bu(total);
  parallel_for(total, [&](std::size_t k) { bu[k] = buyer(point(k)); });
  const double top = std::max(refined.value, *std::max_element(bu.begin(), bu.end()));

  Vector best_x = refined.x;
  double best_s = refined.value >= top - opts.tie_tol ? seller(refined.x) : -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < total; ++k) {
    if (bu[k] < top - opts.tie_tol) continue;
    Vector x = point(k);
    const double s = seller(x);
    if (better_point(s, x, best_s, best_x, TiePreference::lex_largest, 1e-12)) {
      best_s = s;
      best_x = std::move(x);
    }
  }
  return Bundle(std::move(best_x));
}

Bundle separable_response(const FunctionExpr& u, const LinearPrice& price, const BoxDomain& X,
                          const FunctionExpr& c, const ResponseOptions& opts) {
  const std::size_t d = X.dim();
  const double tol = opts.tie_tol / static_cast<double>(d);
  const Vector origin(d, 0.0);
  const double u0 = evaluate(u, origin);

  Vector lo(d);
  Vector hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    Vector buf(d, 0.0);
    auto h = [&](double t) {
      buf[i] = t;
      return evaluate(u, buf) - u0 - price[i] * t;
    };
    const ScalarMax m = golden_section_max(h, 0.0, X.upper(i));
    const double floor = m.value - tol;
    auto edge = [&](double inside, double outside) {
      if (h(outside) >= floor) return outside;
      for (int it = 0; it < 200 && inside != outside; ++it) {
        const double mid = 0.5 * (inside + outside);
        if (mid == inside || mid == outside) break;
        (h(mid) >= floor ? inside : outside) = mid;
      }
      return inside;
    };
    lo[i] = edge(m.x, 0.0);
    hi[i] = edge(m.x, X.upper(i));
  }

  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < d; ++i) {
    if (hi[i] > lo[i]) free.push_back(i);
  }
  if (free.empty()) return Bundle(lo);

  // the seller picks its favourite bundle inside the buyer's indifference box
  Vector widths;
  for (std::size_t i : free) widths.push_back(hi[i] - lo[i]);
  auto seller = [&](const Vector& y) {
    Vector x(lo);
    for (std::size_t k = 0; k < free.size(); ++k) x[free[k]] = lo[free[k]] + y[k];
    return price.payment(x) - evaluate(c, x);
  };
  BoxMaxOptions bo;
  bo.grid_per_dim = grid_for(opts, free.size());
  bo.prefer = TiePreference::lex_largest;
  const BoxMax best = maximize_over_box(seller, BoxDomain(widths), bo);
  Vector x(lo);
  for (std::size_t k = 0; k < free.size(); ++k) x[free[k]] = std::min(hi[free[k]], lo[free[k]] + best.x[k]);
  return Bundle(std::move(x));
}

struct Candidate {
  Vector x;
  Vector price;
  double revenue = 0.0;
};

bool verifies(const FunctionExpr& u, const Candidate& cand, const BoxDomain& X, const FunctionExpr& c,
              const ResponseOptions& opts) {
  const Bundle br = buyer_best_response(u, LinearPrice(cand.price), X, c, opts);
  double scale = 1.0;
  for (double v : cand.x) scale = std::max(scale, std::abs(v));
  return max_abs_diff(br.coords(), cand.x) <= opts.verify_tol * scale;
}

Candidate price_candidate(const FunctionExpr& u, const FunctionExpr& c, Vector x, const ResponseOptions& opts) {
  GradMax g = grad_max(u, x, opts.gradient_cap);
  Candidate out;
  out.revenue = dot(g.gradient, x) - evaluate(c, x);
  out.price = std::move(g.gradient);
  out.x = std::move(x);
  return out;
}

SellerSolution price_out(std::size_t d, const ResponseOptions& opts) {
  return SellerSolution{LinearPrice(Vector(d, opts.gradient_cap)), Bundle::zeros(d), 0.0, false};
}

SellerSolution concave_seller_search(const FunctionExpr& u, const FunctionExpr& c, const BoxDomain& X,
                                     const ResponseOptions& opts) {
  const std::size_t d = X.dim();
  const std::size_t n = grid_for(opts, d);
  std::vector<Vector> axes;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    axes.push_back(linspace_upper(X.upper(i), n));
    total *= n;
  }
  std::vector<Vector> points;
  points.reserve(total + opts.ray_grid_n);
  for (std::size_t k = 1; k < total; ++k) {
    Vector x(d);
    std::size_t r = k;
    for (std::size_t i = d; i-- > 0;) {
      x[i] = axes[i][r % n];
      r /= n;
    }
    points.push_back(std::move(x));
  }
  const auto* leontief = std::get_if<LeontiefNode>(&u.node().kind);
  double t_max = 1.0;
  if (leontief != nullptr) {
    for (std::size_t i = 0; i < d; ++i) {
      if (leontief->anchor[i] > 0.0) t_max = std::min(t_max, X.upper(i) / leontief->anchor[i]);
    }
    for (double t : linspace_upper(t_max, opts.ray_grid_n)) {
      if (t == 0.0) continue;
      Vector x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = t * leontief->anchor[i];
      points.push_back(std::move(x));
    }
  }

  std::vector<Candidate> cands(points.size());
  parallel_for(points.size(), [&](std::size_t k) { cands[k] = price_candidate(u, c, points[k], opts); });
  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cands[a].revenue != cands[b].revenue) return cands[a].revenue > cands[b].revenue;
    return lex_less(cands[b].x, cands[a].x);
  });

  const Candidate* best = nullptr;
  std::size_t tried = 0;
  for (std::size_t k : order) {
    if (cands[k].revenue < 0.0 || tried >= opts.max_verifications) break;
    ++tried;
    if (verifies(u, cands[k], X, c, opts)) {
      best = &cands[k];
      break;
    }
  }
  if (best == nullptr) return price_out(d, opts);

  // local refinement of the revenue around the verified grid candidate
  Candidate refined = *best;
  if (leontief != nullptr) {
    double t0 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (leontief->anchor[i] > 0.0) t0 = std::max(t0, best->x[i] / leontief->anchor[i]);
    }
    const double step = t_max / static_cast<double>(opts.ray_grid_n - 1);
    const ScalarMax r = golden_section_max(
        [&](double t) {
          Vector x(d);
          for (std::size_t i = 0; i < d; ++i) x[i] = t * leontief->anchor[i];
          return price_candidate(u, c, std::move(x), opts).revenue;
        },
        std::max(0.0, t0 - step), std::min(t_max, t0 + step));
    Vector x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = r.x * leontief->anchor[i];
    if (r.x > 0.0) refined = price_candidate(u, c, std::move(x), opts);
  } else {
    Vector x = best->x;
    for (std::size_t i = 0; i < d; ++i) {
      const double h = X.upper(i) / static_cast<double>(n - 1);
      const ScalarMax r = golden_section_max(
          [&](double t) {
            Vector y = x;
            y[i] = t;
            return price_candidate(u, c, std::move(y), opts).revenue;
          },
          std::max(0.0, x[i] - h), std::min(X.upper(i), x[i] + h));
      x[i] = r.x;
    }
    if (std::any_of(x.begin(), x.end(), [](double v) { return v > 0.0; })) {
      refined = price_candidate(u, c, std::move(x), opts);
    }
  }
  if (refined.revenue > best->revenue && verifies(u, refined, X, c, opts)) best = &refined;
  return SellerSolution{LinearPrice(best->price), Bundle(best->x), best->revenue, true};
}

// Reported value functions that are not concave: search the price line directly.
SellerSolution price_grid_search(const FunctionExpr& u, const FunctionExpr& c, const BoxDomain& X,
                                 const ResponseOptions& opts) {
  require(X.dim() == 1, "non-concave reported value functions are supported for d = 1 only");
  const std::size_t n = grid_for(opts, 1);
  const Vector xs = linspace_upper(X.upper(0), n);
  double max_slope = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double s = (evaluate(u, Vector{xs[k]}) - evaluate(u, Vector{xs[k - 1]})) / (xs[k] - xs[k - 1]);
    max_slope = std::max(max_slope, s);
  }
  const Vector prices = linspace_upper(1.01 * max_slope + 1e-9, n);
  std::vector<Bundle> bundles(n);
  Vector revenue(n);
  parallel_for(n, [&](std::size_t k) {
    const LinearPrice p(Vector{prices[k]});
    bundles[k] = buyer_best_response(u, p, X, c, opts);
    revenue[k] = p.payment(bundles[k].coords()) - evaluate(c, bundles[k]);
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (better_point(revenue[k], bundles[k].vec(), revenue[best], bundles[best].vec(), TiePreference::lex_largest,
                     1e-12)) {
      best = k;
    }
  }
  if (revenue[best] < 0.0) return price_out(1, opts);
  return SellerSolution{LinearPrice(Vector{prices[best]}), bundles[best], revenue[best], true};
}

}  // namespace

LinearPrice::LinearPrice(Vector units) : units_(std::move(units)) {
  require(!units_.empty(), "price vector must have d >= 1");
  for (double p : units_) require(std::isfinite(p) && p >= 0.0, "unit prices must be finite and >= 0");
}

Vector uniform_split(std::size_t dim) {
  require(dim >= 1, "split needs d >= 1");
  return Vector(dim, 1.0 / static_cast<double>(dim));
}

Bundle buyer_best_response(const FunctionExpr& u, const LinearPrice& price, const BoxDomain& X,
                           const FunctionExpr& c, const ResponseOptions& opts) {
  check_response_args(u, X, c);
  require(price.dim() == X.dim(), "price dimension does not match the domain");
  if (const auto* l = std::get_if<LeontiefNode>(&u.node().kind)) return leontief_response(*l, price, X, c, opts);
  if (is_concave(u.shape()) && is_separable(u)) return separable_response(u, price, X, c, opts);
  return grid_response([&](const Vector& x) { return evaluate(u, x) - price.payment(x); },
                       [&](const Vector& x) { return price.payment(x) - evaluate(c, x); }, X, opts);
}

Bundle buyer_best_response_to(const FunctionExpr& u, const FunctionExpr& pricing, const BoxDomain& X,
                              const FunctionExpr& c, const ResponseOptions& opts) {
  check_response_args(u, X, c);
  require(pricing.valid() && pricing.dim() == X.dim(), "pricing function dimension does not match the domain");
  return grid_response([&](const Vector& x) { return evaluate(u, x) - evaluate(pricing, x); },
                       [&](const Vector& x) { return evaluate(pricing, x) - evaluate(c, x); }, X, opts);
}

SellerSolution seller_optimal_linear_price(const FunctionExpr& u, const FunctionExpr& c, const BoxDomain& X,
                                           const ResponseOptions& opts) {
  check_response_args(u, X, c);
  require(X.dim() <= kMaxGridDim, "dimension > 4 is not supported by the grid solvers");
  if (is_concave(u.shape())) return concave_seller_search(u, c, X, opts);
  return price_grid_search(u, c, X, opts);
}

LinearPrice optimal_price_family(const Bundle& xstar, double pstar, std::span<const double> lambda) {
  require(lambda.size() == xstar.dim(), "lambda dimension does not match the bundle");
  require(xstar.strictly_positive(), "optimal price family needs a strictly positive bundle");
  require(std::isfinite(pstar) && pstar >= 0.0, "payment must be finite and >= 0");
  double total = 0.0;
  for (double l : lambda) {
    require(std::isfinite(l) && l >= 0.0, "lambda entries must be >= 0");
    total += l;
  }
  require(std::abs(total - 1.0) <= 1e-12, "lambda must sum to 1");
  Vector p(xstar.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = lambda[i] * pstar / xstar[i];
  return LinearPrice(std::move(p));
}

}  // namespace padd
