#include "padd/instances.hpp"

namespace padd {

Instance fig2a_instance() {
  return {"fig2a", FunctionExpr::power(64.0, 0.5), FunctionExpr::power(1.0, 2.0), BoxDomain(Vector{100.0})};
}

Instance fig2b_instance() {
  return {"fig2b", FunctionExpr::power(4.0, 0.25), FunctionExpr::power(1.0, 0.5), BoxDomain(Vector{100.0})};
}

Instance example1_instance() {
  return {"example1", FunctionExpr::min_of_affine({{Vector{10.0}, 0.0}, {Vector{0.0}, 8.1}}),
          FunctionExpr::power(1.0, 2.0), BoxDomain(Vector{10.0})};
}

std::vector<Instance> catalog_instances() {
  using F = FunctionExpr;
  std::vector<Instance> out{fig2a_instance(), fig2b_instance(), example1_instance()};
  // value equal to cost: nothing to gain from trade
  out.push_back({"v_equals_c", F::power(1.0, 0.5), F::power(1.0, 0.5), BoxDomain(Vector{50.0})});
  out.push_back({"linear_cost_1d", F::power(10.0, 0.5), F::affine(Vector{2.0}), BoxDomain(Vector{50.0})});
  out.push_back({"cubic_cost_1d", F::power(20.0, 0.5), F::power(1.0, 3.0), BoxDomain(Vector{10.0})});
  out.push_back({"concave_cost_1d", F::power(6.0, 0.3), F::power(2.0, 0.6), BoxDomain(Vector{20.0})});
  out.push_back({"sum_cost_1d", F::power(12.0, 0.5),
                 F::scale(0.5, F::sum({F::power(1.0, 2.0), F::affine(Vector{2.0})})), BoxDomain(Vector{20.0})});
  out.push_back({"separable_convex_2d", F::power_sum({3.0, 2.0}, {0.5, 0.5}), F::power_sum({1.0, 1.0}, {2.0, 2.0}),
                 BoxDomain(Vector{10.0, 10.0})});
  out.push_back({"concave_cost_2d", F::affine(Vector{3.0, 2.0}), F::power_sum({4.0, 1.0}, {0.5, 0.5}),
                 BoxDomain(Vector{10.0, 10.0})});
  out.push_back({"linear_cost_2d", F::power_sum({6.0, 4.0}, {0.5, 0.5}), F::affine(Vector{1.0, 2.0}),
                 BoxDomain(Vector{20.0, 20.0})});
  out.push_back({"complements_2d", F::min_of_affine({{Vector{5.0, 0.0}, 0.0}, {Vector{0.0, 5.0}, 0.0}}),
                 F::power_sum({1.0, 1.0}, {2.0, 2.0}), BoxDomain(Vector{5.0, 5.0})});
  return out;
}

}  // namespace padd
