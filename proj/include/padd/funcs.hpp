#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "padd/bundle.hpp"
#include "padd/graph.hpp"

namespace padd {

enum class Shape { linear, convex, concave, general };

std::string_view to_string(Shape s);
inline bool is_concave(Shape s) { return s == Shape::concave || s == Shape::linear; }
inline bool is_convex(Shape s) { return s == Shape::convex || s == Shape::linear; }

struct Node;

/// Immutable expression from a closed catalog of monotone functions on R^d_+.
/// Copies share the underlying tree.
class FunctionExpr {
 public:
  FunctionExpr() = default;

  /// sum_i k_i * x_i^{b_i}
  static FunctionExpr power_sum(Vector coeffs, Vector exponents);
  /// k * x^b on a single good.
  static FunctionExpr power(double coeff, double exponent);
  static FunctionExpr affine(Vector weights, double intercept = 0.0);
  /// level * min{x_1/a_1, ..., x_d/a_d, 1}; coordinates with a_i = 0 are ignored.
  static FunctionExpr leontief(Vector anchor, double level);
  static FunctionExpr min_of_affine(std::vector<std::pair<Vector, double>> pieces);
  /// Pointwise minimum of arbitrary catalog expressions.
  static FunctionExpr min_of(std::vector<FunctionExpr> children);
  static FunctionExpr sum(std::vector<FunctionExpr> children);
  static FunctionExpr scale(double factor, FunctionExpr child);
  /// sum_i min(sum_j a_ji x_j, x_i)
  static FunctionExpr graph_min_cost(GraphInstance graph);

  std::size_t dim() const { return dim_; }
  /// Structural shape flag, fixed at construction.
  Shape shape() const { return shape_; }
  const Node& node() const { return *node_; }
  bool valid() const { return static_cast<bool>(node_); }

 private:
  explicit FunctionExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
  std::size_t dim_ = 0;
  Shape shape_ = Shape::general;
};

struct PowerSumNode {
  Vector coeffs;
  Vector exponents;
};

struct AffineNode {
  Vector weights;
  double intercept = 0.0;
};

struct LeontiefNode {
  Vector anchor;
  double level = 0.0;
};

struct MinOfAffineNode {
  std::vector<AffineNode> pieces;
};

struct MinNode {
  std::vector<FunctionExpr> children;
};

struct SumNode {
  std::vector<FunctionExpr> children;
};

struct ScaleNode {
  double factor = 1.0;
  FunctionExpr child;
};

struct GraphMinCostNode {
  GraphInstance graph;
};

struct Node {
  std::variant<PowerSumNode, AffineNode, LeontiefNode, MinOfAffineNode, MinNode, SumNode,
               ScaleNode, GraphMinCostNode>
      kind;
};

/// Vertex description of the supergradient set at a point. For differentiable
/// nodes this is the single gradient.
struct SupergradientSet {
  std::vector<Vector> vertices;
  /// an infinite partial derivative was replaced by the cap
  bool capped = false;
};

struct GradMax {
  Vector gradient;
  bool capped = false;
};

inline constexpr double kDefaultGradientCap = 1e12;

double evaluate(const FunctionExpr& f, std::span<const double> x);
inline double evaluate(const FunctionExpr& f, const Bundle& x) { return evaluate(f, x.coords()); }

/// Pieces active at x in their (super/sub)gradient form.
SupergradientSet supergradients(const FunctionExpr& f, std::span<const double> x,
                                double cap = kDefaultGradientCap);

/// Gradient at x. Throws PreconditionError where f has a kink or an infinite
/// partial derivative.
Vector gradient(const FunctionExpr& f, std::span<const double> x);

/// Supergradient maximizing g.x; ties go to the lexicographically greatest
/// vertex. Requires a concave or linear expression.
GradMax grad_max(const FunctionExpr& f, std::span<const double> x,
                 double cap = kDefaultGradientCap);

Shape classify(const FunctionExpr& f);

using Json = nlohmann::ordered_json;

Json to_json(const FunctionExpr& f);
/// Throws ParseError on unknown kinds or missing fields.
FunctionExpr function_from_json(const Json& j);

}  // namespace padd
