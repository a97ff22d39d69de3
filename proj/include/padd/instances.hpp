#pragma once

#include <string>
#include <vector>

#include "padd/bundle.hpp"
#include "padd/funcs.hpp"

namespace padd {

struct Instance {
  std::string name;
  FunctionExpr value;
  FunctionExpr cost;
  BoxDomain domain;
};

/// v = 64 sqrt(x), c = x^2, X = [0, 100]
Instance fig2a_instance();
/// v = 4 x^(1/4), c = sqrt(x), X = [0, 100]
Instance fig2b_instance();
/// v = min(10x, 8.1), c = x^2, X = [0, 10]
Instance example1_instance();

/// Small catalog with convex, concave and linear costs (d <= 2).
std::vector<Instance> catalog_instances();

}  // namespace padd
