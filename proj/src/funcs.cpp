#include "padd/funcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "padd/error.hpp"

namespace padd {
namespace {

// Double-double helpers. Piece comparisons in MinOfAffine and GraphMinCost are
// made on twice-working-precision values so that kinks are located by the
// stored parameters rather than by a tolerance.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DD dd_add(DD a, double b) {
  DD s = two_sum(a.hi, b);
  s.lo += a.lo;
  return two_sum(s.hi, s.lo);
}

DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return two_sum(s.hi, s.lo);
}

int dd_compare(DD a, DD b) {
  if (a.hi != b.hi) return a.hi < b.hi ? -1 : 1;
  if (a.lo != b.lo) return a.lo < b.lo ? -1 : 1;
  return 0;
}

DD dd_affine(const AffineNode& a, std::span<const double> x) {
  DD acc{a.intercept, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) acc = dd_add(acc, two_prod(a.weights[i], x[i]));
  return acc;
}

// Sign of a*b - c*d, exact.
int compare_products(double a, double b, double c, double d) {
  return dd_compare(two_prod(a, b), two_prod(c, d));
}

DD neighbor_sum(const GraphInstance& g, std::size_t i, std::span<const double> x) {
  DD acc{};
  for (std::size_t j : g.neighbors(i)) acc = dd_add(acc, x[j]);
  return acc;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool lex_greater(const Vector& a, const Vector& b) { return lex_less(b, a); }

void dedupe(std::vector<Vector>& vs) {
  std::sort(vs.begin(), vs.end(), [](const Vector& a, const Vector& b) { return lex_less(a, b); });
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

void check_nonneg(const Vector& v, const char* what) {
  for (double e : v) require(std::isfinite(e) && e >= 0.0, std::string(what) + " must be finite and >= 0");
}

Shape combine_sum(Shape a, Shape b) {
  if (a == Shape::linear) return b;
  if (b == Shape::linear) return a;
  if (a == b) return a;
  return Shape::general;
}

Shape compute_shape(const Node& n) {
  return std::visit(
      Overloaded{
          [](const PowerSumNode& p) {
            bool all_le = true;
            bool all_ge = true;
            for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
              if (p.coeffs[i] == 0.0) continue;
              if (p.exponents[i] > 1.0) all_le = false;
              if (p.exponents[i] < 1.0) all_ge = false;
            }
            if (all_le && all_ge) return Shape::linear;
            if (all_le) return Shape::concave;
            if (all_ge) return Shape::convex;
            return Shape::general;
          },
          [](const AffineNode&) { return Shape::linear; },
          [](const LeontiefNode&) { return Shape::concave; },
          [](const MinOfAffineNode& m) {
            return m.pieces.size() == 1 ? Shape::linear : Shape::concave;
          },
          [](const MinNode& m) {
            if (m.children.size() == 1) return m.children.front().shape();
            for (const auto& c : m.children) {
              if (!is_concave(c.shape())) return Shape::general;
            }
            return Shape::concave;
          },
          [](const SumNode& s) {
            Shape acc = Shape::linear;
            for (const auto& c : s.children) acc = combine_sum(acc, c.shape());
            return acc;
          },
          [](const ScaleNode& s) { return s.factor == 0.0 ? Shape::linear : s.child.shape(); },
          // each term is the minimum of two linear functions
          [](const GraphMinCostNode&) { return Shape::concave; },
      },
      n.kind);
}

std::size_t compute_dim(const Node& n) {
  return std::visit(Overloaded{
                        [](const PowerSumNode& p) { return p.coeffs.size(); },
                        [](const AffineNode& a) { return a.weights.size(); },
                        [](const LeontiefNode& l) { return l.anchor.size(); },
                        [](const MinOfAffineNode& m) { return m.pieces.front().weights.size(); },
                        [](const MinNode& m) { return m.children.front().dim(); },
                        [](const SumNode& s) { return s.children.front().dim(); },
                        [](const ScaleNode& s) { return s.child.dim(); },
                        [](const GraphMinCostNode& g) { return g.graph.nodes(); },
                    },
                    n.kind);
}

// Index set of the smallest ratios x_i/a_i over the support of the anchor, and
// how that minimum compares with 1.
struct LeontiefActive {
  std::vector<std::size_t> argmin;
  int vs_one = 0;  // sign of (min ratio - 1)
};

LeontiefActive leontief_active(const LeontiefNode& l, std::span<const double> x) {
  LeontiefActive out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (l.anchor[i] == 0.0) continue;
    if (out.argmin.empty()) {
      out.argmin.push_back(i);
      continue;
    }
    const std::size_t j = out.argmin.front();
    const int cmp = compare_products(x[i], l.anchor[j], x[j], l.anchor[i]);
    if (cmp < 0) {
      out.argmin.assign(1, i);
    } else if (cmp == 0) {
      out.argmin.push_back(i);
    }
  }
  const std::size_t j = out.argmin.front();
  out.vs_one = x[j] < l.anchor[j] ? -1 : (x[j] > l.anchor[j] ? 1 : 0);
  return out;
}

double eval_node(const FunctionExpr& f, std::span<const double> x);

double eval_leontief(const LeontiefNode& l, std::span<const double> x) {
  const LeontiefActive act = leontief_active(l, x);
  if (act.vs_one >= 0) return l.level;
  const std::size_t i = act.argmin.front();
  return l.level * (x[i] / l.anchor[i]);
}

double eval_node(const FunctionExpr& f, std::span<const double> x) {
  return std::visit(
      Overloaded{
          [&](const PowerSumNode& p) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
              if (p.coeffs[i] == 0.0) continue;
              const double b = p.exponents[i];
              double t;
              if (b == 1.0) {
                t = x[i];
              } else if (b == 0.5) {
                t = std::sqrt(x[i]);
              } else if (b == 2.0) {
                t = x[i] * x[i];
              } else {
                t = std::pow(x[i], b);
              }
              s += p.coeffs[i] * t;
            }
            return s;
          },
          [&](const AffineNode& a) { return dd_affine(a, x).hi; },
          [&](const LeontiefNode& l) { return eval_leontief(l, x); },
          [&](const MinOfAffineNode& m) {
            DD best = dd_affine(m.pieces.front(), x);
            for (std::size_t k = 1; k < m.pieces.size(); ++k) {
              const DD v = dd_affine(m.pieces[k], x);
              if (dd_compare(v, best) < 0) best = v;
            }
            return best.hi;
          },
          [&](const MinNode& m) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : m.children) best = std::min(best, eval_node(c, x));
            return best;
          },
          [&](const SumNode& s) {
            double acc = 0.0;
            for (const auto& c : s.children) acc += eval_node(c, x);
            return acc;
          },
          [&](const ScaleNode& s) { return s.factor * eval_node(s.child, x); },
          [&](const GraphMinCostNode& g) {
            DD acc{};
            for (std::size_t i = 0; i < x.size(); ++i) {
              const DD s = neighbor_sum(g.graph, i, x);
              acc = dd_add(acc, dd_compare(s, DD{x[i], 0.0}) < 0 ? s : DD{x[i], 0.0});
            }
            return acc.hi;
          },
      },
      f.node().kind);
}

void check_point(const FunctionExpr& f, std::span<const double> x) {
  require(f.valid(), "empty function expression");
  if (x.size() != f.dim()) {
    throw PreconditionError("dimension mismatch: expression has d=" + std::to_string(f.dim()) +
                            ", bundle has d=" + std::to_string(x.size()));
  }
  for (double v : x) {
    require(std::isfinite(v), "non-finite coordinate");
    require(v >= 0.0, "negative coordinate");
  }
}

Vector unit(std::size_t d, std::size_t i, double value) {
  Vector v(d, 0.0);
  v[i] = value;
  return v;
}

double power_partial(double k, double b, double xi, double cap, bool& capped) {
  if (k == 0.0) return 0.0;
  if (b == 1.0) return k;
  if (xi == 0.0) {
    if (b < 1.0) {
      capped = true;
      return cap;
    }
    return 0.0;
  }
  return k * b * std::pow(xi, b - 1.0);
}

SupergradientSet node_supergradients(const FunctionExpr& f, std::span<const double> x, double cap);

SupergradientSet minkowski(const std::vector<SupergradientSet>& parts, std::size_t d) {
  constexpr std::size_t kMaxVertices = std::size_t{1} << 16;
  SupergradientSet out;
  out.vertices.push_back(Vector(d, 0.0));
  for (const auto& part : parts) {
    out.capped = out.capped || part.capped;
    require(out.vertices.size() * part.vertices.size() <= kMaxVertices,
            "supergradient vertex enumeration too large");
    std::vector<Vector> next;
    next.reserve(out.vertices.size() * part.vertices.size());
    for (const auto& a : out.vertices) {
      for (const auto& b : part.vertices) {
        Vector s(a);
        for (std::size_t i = 0; i < d; ++i) s[i] += b[i];
        next.push_back(std::move(s));
      }
    }
    dedupe(next);
    out.vertices = std::move(next);
  }
  return out;
}

SupergradientSet node_supergradients(const FunctionExpr& f, std::span<const double> x, double cap) {
  const std::size_t d = x.size();
  return std::visit(
      Overloaded{
          [&](const PowerSumNode& p) {
            SupergradientSet s;
            Vector g(d);
            for (std::size_t i = 0; i < d; ++i) {
              g[i] = power_partial(p.coeffs[i], p.exponents[i], x[i], cap, s.capped);
            }
            s.vertices.push_back(std::move(g));
            return s;
          },
          [&](const AffineNode& a) { return SupergradientSet{{a.weights}, false}; },
          [&](const LeontiefNode& l) {
            const LeontiefActive act = leontief_active(l, x);
            SupergradientSet s;
            if (act.vs_one <= 0) {
              for (std::size_t i : act.argmin) s.vertices.push_back(unit(d, i, l.level / l.anchor[i]));
            }
            if (act.vs_one >= 0) s.vertices.push_back(Vector(d, 0.0));
            dedupe(s.vertices);
            return s;
          },
          [&](const MinOfAffineNode& m) {
            std::vector<DD> vals;
            DD best = dd_affine(m.pieces.front(), x);
            for (const auto& piece : m.pieces) {
              vals.push_back(dd_affine(piece, x));
              if (dd_compare(vals.back(), best) < 0) best = vals.back();
            }
            SupergradientSet s;
            for (std::size_t k = 0; k < m.pieces.size(); ++k) {
              if (dd_compare(vals[k], best) == 0) s.vertices.push_back(m.pieces[k].weights);
            }
            dedupe(s.vertices);
            return s;
          },
          [&](const MinNode& m) {
            std::vector<double> vals;
            for (const auto& c : m.children) vals.push_back(eval_node(c, x));
            const double best = *std::min_element(vals.begin(), vals.end());
            SupergradientSet s;
            for (std::size_t k = 0; k < m.children.size(); ++k) {
              if (vals[k] != best) continue;
              SupergradientSet cs = node_supergradients(m.children[k], x, cap);
              s.capped = s.capped || cs.capped;
              for (auto& v : cs.vertices) s.vertices.push_back(std::move(v));
            }
            dedupe(s.vertices);
            return s;
          },
          [&](const SumNode& sn) {
            std::vector<SupergradientSet> parts;
            for (const auto& c : sn.children) parts.push_back(node_supergradients(c, x, cap));
            return minkowski(parts, d);
          },
          [&](const ScaleNode& sc) {
            SupergradientSet s = node_supergradients(sc.child, x, cap);
            for (auto& v : s.vertices) {
              for (double& e : v) e *= sc.factor;
            }
            dedupe(s.vertices);
            return s;
          },
          [&](const GraphMinCostNode& g) {
            std::vector<SupergradientSet> parts;
            for (std::size_t i = 0; i < d; ++i) {
              const int cmp = dd_compare(neighbor_sum(g.graph, i, x), DD{x[i], 0.0});
              SupergradientSet term;
              if (cmp <= 0) {
                Vector ind(d, 0.0);
                for (std::size_t j : g.graph.neighbors(i)) ind[j] = 1.0;
                term.vertices.push_back(std::move(ind));
              }
              if (cmp >= 0) term.vertices.push_back(unit(d, i, 1.0));
              dedupe(term.vertices);
              parts.push_back(std::move(term));
            }
            return minkowski(parts, d);
          },
      },
      f.node().kind);
}

// Picks the best of several candidate supergradients by score g.x, ties to the
// lexicographically greatest vector.
void keep_better(GradMax& best, bool& have, GradMax cand, DD score, DD& best_score) {
  if (!have) {
    best = std::move(cand);
    best_score = score;
    have = true;
    return;
  }
  const int cmp = dd_compare(score, best_score);
  if (cmp > 0 || (cmp == 0 && lex_greater(cand.gradient, best.gradient))) {
    best = std::move(cand);
    best_score = score;
  }
}

DD dd_score(const Vector& g, std::span<const double> x) {
  DD acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc = dd_add(acc, two_prod(g[i], x[i]));
  return acc;
}

GradMax node_grad_max(const FunctionExpr& f, std::span<const double> x, double cap) {
  const std::size_t d = x.size();
  return std::visit(
      Overloaded{
          [&](const PowerSumNode&) {
            SupergradientSet s = node_supergradients(f, x, cap);
            return GradMax{std::move(s.vertices.front()), s.capped};
          },
          [&](const AffineNode& a) { return GradMax{a.weights, false}; },
          [&](const LeontiefNode& l) {
            const LeontiefActive act = leontief_active(l, x);
            // every active coordinate piece scores level * min ratio; the
            // smallest index gives the lexicographically greatest vector
            if (act.vs_one <= 0 && l.level > 0.0) {
              const std::size_t i = act.argmin.front();
              return GradMax{unit(d, i, l.level / l.anchor[i]), false};
            }
            return GradMax{Vector(d, 0.0), false};
          },
          [&](const MinOfAffineNode&) {
            SupergradientSet s = node_supergradients(f, x, cap);
            GradMax best;
            DD best_score;
            bool have = false;
            for (auto& v : s.vertices) {
              const DD score = dd_score(v, x);
              keep_better(best, have, GradMax{std::move(v), false}, score, best_score);
            }
            return best;
          },
          [&](const MinNode& m) {
            std::vector<double> vals;
            for (const auto& c : m.children) vals.push_back(eval_node(c, x));
            const double lowest = *std::min_element(vals.begin(), vals.end());
            GradMax best;
            DD best_score;
            bool have = false;
            for (std::size_t k = 0; k < m.children.size(); ++k) {
              if (vals[k] != lowest) continue;
              GradMax cand = node_grad_max(m.children[k], x, cap);
              const DD score = dd_score(cand.gradient, x);
              keep_better(best, have, std::move(cand), score, best_score);
            }
            return best;
          },
          [&](const SumNode& sn) {
            GradMax acc{Vector(d, 0.0), false};
            for (const auto& c : sn.children) {
              const GradMax g = node_grad_max(c, x, cap);
              for (std::size_t i = 0; i < d; ++i) acc.gradient[i] += g.gradient[i];
              acc.capped = acc.capped || g.capped;
            }
            return acc;
          },
          [&](const ScaleNode& sc) {
            GradMax g = node_grad_max(sc.child, x, cap);
            for (double& e : g.gradient) e *= sc.factor;
            return g;
          },
          [&](const GraphMinCostNode& g) {
            Vector acc(d, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
              const auto& nb = g.graph.neighbors(i);
              const int cmp = dd_compare(neighbor_sum(g.graph, i, x), DD{x[i], 0.0});
              // on a tie both pieces score x_i; the indicator wins when its
              // first neighbor precedes i
              const bool use_neighbors = cmp < 0 || (cmp == 0 && !nb.empty() && nb.front() < i);
              if (use_neighbors) {
                for (std::size_t j : nb) acc[j] += 1.0;
              } else {
                acc[i] += 1.0;
              }
            }
            return GradMax{std::move(acc), false};
          },
      },
      f.node().kind);
}

double json_number(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

Vector json_vector(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  Vector out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ParseError(std::string("field \"") + key + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::linear:
      return "linear";
    case Shape::convex:
      return "convex";
    case Shape::concave:
      return "concave";
    case Shape::general:
      return "general";
  }
  return "general";
}

FunctionExpr::FunctionExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {
  dim_ = compute_dim(*node_);
  shape_ = compute_shape(*node_);
}

FunctionExpr FunctionExpr::power_sum(Vector coeffs, Vector exponents) {
  require(!coeffs.empty(), "power_sum needs at least one term");
  require(coeffs.size() == exponents.size(), "power_sum coeffs/exponents length mismatch");
  check_nonneg(coeffs, "power_sum coefficients");
  for (double b : exponents) require(std::isfinite(b) && b > 0.0, "power_sum exponents must be > 0");
  return FunctionExpr(std::make_shared<const Node>(Node{PowerSumNode{std::move(coeffs), std::move(exponents)}}));
}

FunctionExpr FunctionExpr::power(double coeff, double exponent) {
  return power_sum(Vector{coeff}, Vector{exponent});
}

FunctionExpr FunctionExpr::affine(Vector weights, double intercept) {
  require(!weights.empty(), "affine needs at least one weight");
  check_nonneg(weights, "affine weights");
  require(std::isfinite(intercept) && intercept >= 0.0, "affine intercept must be >= 0");
  return FunctionExpr(std::make_shared<const Node>(Node{AffineNode{std::move(weights), intercept}}));
}

FunctionExpr FunctionExpr::leontief(Vector anchor, double level) {
  require(!anchor.empty(), "leontief anchor must have d >= 1");
  check_nonneg(anchor, "leontief anchor");
  require(std::any_of(anchor.begin(), anchor.end(), [](double a) { return a > 0.0; }),
          "leontief anchor must have a positive coordinate");
  require(std::isfinite(level) && level >= 0.0, "leontief level must be >= 0");
  return FunctionExpr(std::make_shared<const Node>(Node{LeontiefNode{std::move(anchor), level}}));
}

FunctionExpr FunctionExpr::min_of_affine(std::vector<std::pair<Vector, double>> pieces) {
  require(!pieces.empty(), "min_of_affine needs at least one piece");
  MinOfAffineNode node;
  const std::size_t d = pieces.front().first.size();
  for (auto& [w, b] : pieces) {
    require(w.size() == d, "min_of_affine pieces differ in dimension");
    check_nonneg(w, "min_of_affine weights");
    require(std::isfinite(b) && b >= 0.0, "min_of_affine intercepts must be >= 0");
    node.pieces.push_back(AffineNode{std::move(w), b});
  }
  return FunctionExpr(std::make_shared<const Node>(Node{std::move(node)}));
}

FunctionExpr FunctionExpr::min_of(std::vector<FunctionExpr> children) {
  require(!children.empty(), "min needs at least one child");
  for (const auto& c : children) {
    require(c.valid() && c.dim() == children.front().dim(), "min children differ in dimension");
  }
  return FunctionExpr(std::make_shared<const Node>(Node{MinNode{std::move(children)}}));
}

FunctionExpr FunctionExpr::sum(std::vector<FunctionExpr> children) {
  require(!children.empty(), "sum needs at least one child");
  for (const auto& c : children) {
    require(c.valid() && c.dim() == children.front().dim(), "sum children differ in dimension");
  }
  return FunctionExpr(std::make_shared<const Node>(Node{SumNode{std::move(children)}}));
}

FunctionExpr FunctionExpr::scale(double factor, FunctionExpr child) {
  require(std::isfinite(factor) && factor >= 0.0, "scale factor must be finite and >= 0");
  require(child.valid(), "scale of an empty expression");
  return FunctionExpr(std::make_shared<const Node>(Node{ScaleNode{factor, std::move(child)}}));
}

FunctionExpr FunctionExpr::graph_min_cost(GraphInstance graph) {
  require(graph.nodes() >= 1, "graph cost needs at least one node");
  return FunctionExpr(std::make_shared<const Node>(Node{GraphMinCostNode{std::move(graph)}}));
}

double evaluate(const FunctionExpr& f, std::span<const double> x) {
  check_point(f, x);
  return eval_node(f, x);
}

SupergradientSet supergradients(const FunctionExpr& f, std::span<const double> x, double cap) {
  check_point(f, x);
  return node_supergradients(f, x, cap);
}

Vector gradient(const FunctionExpr& f, std::span<const double> x) {
  SupergradientSet s = supergradients(f, x, std::numeric_limits<double>::infinity());
  require(!s.capped, "function is not differentiable at x: infinite partial derivative");
  if (s.vertices.size() != 1) {
    throw PreconditionError("function is not differentiable at x: kink with " + std::to_string(s.vertices.size()) +
                            " active pieces");
  }
  return std::move(s.vertices.front());
}

GradMax grad_max(const FunctionExpr& f, std::span<const double> x, double cap) {
  check_point(f, x);
  if (!is_concave(f.shape())) {
    throw PreconditionError("grad_max requires a concave function, got " + std::string(to_string(f.shape())));
  }
  return node_grad_max(f, x, cap);
}

Shape classify(const FunctionExpr& f) { return f.shape(); }

Json to_json(const FunctionExpr& f) {
  return std::visit(
      Overloaded{
          [](const PowerSumNode& p) {
            return Json{{"kind", "power_sum"}, {"coeffs", p.coeffs}, {"exponents", p.exponents}};
          },
          [](const AffineNode& a) {
            return Json{{"kind", "affine"}, {"weights", a.weights}, {"intercept", a.intercept}};
          },
          [](const LeontiefNode& l) {
            return Json{{"kind", "leontief"}, {"anchor", l.anchor}, {"level", l.level}};
          },
          [](const MinOfAffineNode& m) {
            Json pieces = Json::array();
            for (const auto& p : m.pieces) pieces.push_back(Json{{"weights", p.weights}, {"intercept", p.intercept}});
            return Json{{"kind", "min_of_affine"}, {"pieces", std::move(pieces)}};
          },
          [](const MinNode& m) {
            Json children = Json::array();
            for (const auto& c : m.children) children.push_back(to_json(c));
            return Json{{"kind", "min"}, {"children", std::move(children)}};
          },
          [](const SumNode& s) {
            Json children = Json::array();
            for (const auto& c : s.children) children.push_back(to_json(c));
            return Json{{"kind", "sum"}, {"children", std::move(children)}};
          },
          [](const ScaleNode& s) {
            return Json{{"kind", "scale"}, {"factor", s.factor}, {"child", to_json(s.child)}};
          },
          [](const GraphMinCostNode& g) {
            return Json{{"kind", "graph_min_cost"}, {"adjacency", g.graph.adjacency_matrix()}};
          },
      },
      f.node().kind);
}

FunctionExpr function_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("function expression must be a JSON object");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power_sum") return FunctionExpr::power_sum(json_vector(j, "coeffs"), json_vector(j, "exponents"));
    if (kind == "affine") {
      return FunctionExpr::affine(json_vector(j, "weights"), j.contains("intercept") ? json_number(j, "intercept") : 0.0);
    }
    if (kind == "leontief") return FunctionExpr::leontief(json_vector(j, "anchor"), json_number(j, "level"));
    if (kind == "min_of_affine") {
      std::vector<std::pair<Vector, double>> pieces;
      for (const auto& p : j.at("pieces")) {
        pieces.emplace_back(json_vector(p, "weights"), p.contains("intercept") ? json_number(p, "intercept") : 0.0);
      }
      return FunctionExpr::min_of_affine(std::move(pieces));
    }
    if (kind == "min" || kind == "sum") {
      std::vector<FunctionExpr> children;
      for (const auto& c : j.at("children")) children.push_back(function_from_json(c));
      return kind == "min" ? FunctionExpr::min_of(std::move(children)) : FunctionExpr::sum(std::move(children));
    }
    if (kind == "scale") return FunctionExpr::scale(json_number(j, "factor"), function_from_json(j.at("child")));
    if (kind == "graph_min_cost") {
      return FunctionExpr::graph_min_cost(
          GraphInstance::from_adjacency(j.at("adjacency").get<std::vector<std::vector<int>>>()));
    }
    throw ParseError("unknown function kind \"" + kind + "\"");
  } catch (const Json::exception& e) {
    throw ParseError(std::string("function expression: ") + e.what());
  }
}

}  // namespace padd
