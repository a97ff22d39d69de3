#include "padd/hardness.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "padd/error.hpp"
#include "padd/optimize.hpp"

namespace padd {
namespace {

void check_unit_cube(const GraphInstance& g, std::span<const double> x) {
  require(x.size() == g.nodes(), "bundle dimension does not match the graph");
  for (double v : x) require(std::isfinite(v) && v >= 0.0 && v <= 1.0, "coordinate outside [0, 1]");
}

void check_enumerable(const GraphInstance& g) {
  require(g.nodes() <= kMaxBruteForceNodes,
          "brute force limited to d <= 20 (d = " + std::to_string(g.nodes()) + ")");
}

mpq_class exact_U(const GraphInstance& g, std::span<const double> x) {
  mpq_class total = 0;
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    mpq_class s = 0;
    for (std::size_t j : g.neighbors(i)) s += mpq_class(x[j]);
    const mpq_class xi(x[i]);
    total += xi - (s < xi ? s : xi);
  }
  return total;
}

mpq_class exact_expectation(const GraphInstance& g, const std::vector<mpq_class>& p) {
  mpq_class total = 0;
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    if (p[i] == 0) continue;
    mpq_class term = p[i];
    for (std::size_t j : g.neighbors(i)) term *= 1 - p[j];
    total += term;
  }
  return total;
}

// Bit (d - 1 - i) of a mask is x_i, so numeric mask order is lexicographic order.
Vector vertex_of(std::uint32_t mask, std::size_t d) {
  Vector x(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    if (mask & (std::uint32_t{1} << (d - 1 - i))) x[i] = 1.0;
  }
  return x;
}

}  // namespace

FunctionExpr build_cost(const GraphInstance& g) { return FunctionExpr::graph_min_cost(g); }

double surplus_U(const GraphInstance& g, std::span<const double> x) {
  check_unit_cube(g, x);
  double total = 0.0;
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    double s = 0.0;
    for (std::size_t j : g.neighbors(i)) s += x[j];
    total += x[i] - std::min(s, x[i]);
  }
  return total;
}

int compare_surplus_exact(const GraphInstance& g, std::span<const double> x, std::span<const double> y) {
  check_unit_cube(g, x);
  check_unit_cube(g, y);
  return cmp(exact_U(g, x), exact_U(g, y));
}

BinaryMax brute_force_max(const GraphInstance& g) {
  check_enumerable(g);
  const std::size_t d = g.nodes();
  const std::uint32_t total = std::uint32_t{1} << d;
  constexpr std::uint32_t kChunk = 4096;
  const std::size_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::pair<double, std::uint32_t>> best(chunks, {-1.0, 0});
  parallel_for(chunks, [&](std::size_t ch) {
    const std::uint32_t begin = static_cast<std::uint32_t>(ch) * kChunk;
    const std::uint32_t end = std::min(total, begin + kChunk);
    for (std::uint32_t m = begin; m < end; ++m) {
      const double u = surplus_U(g, vertex_of(m, d));
      if (u > best[ch].first) best[ch] = {u, m};
    }
  });
  // chunks are in increasing mask order, so strict improvement keeps the smallest mask
  std::pair<double, std::uint32_t> top = best.front();
  for (const auto& b : best) {
    if (b.first > top.first) top = b;
  }
  return BinaryMax{top.first, Bundle(vertex_of(top.second, d))};
}

std::size_t mis_brute_force(const GraphInstance& g) {
  check_enumerable(g);
  const std::size_t d = g.nodes();
  std::vector<std::uint32_t> nbr(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j : g.neighbors(i)) nbr[i] |= std::uint32_t{1} << j;
  }
  const std::uint32_t total = std::uint32_t{1} << d;
  std::size_t best = 0;
  for (std::uint32_t m = 0; m < total; ++m) {
    const std::size_t size = static_cast<std::size_t>(std::popcount(m));
    if (size <= best) continue;
    bool independent = true;
    for (std::size_t i = 0; i < d && independent; ++i) {
      if ((m >> i) & 1U) independent = (m & nbr[i]) == 0;
    }
    if (independent) best = size;
  }
  return best;
}

RoundingState::RoundingState(std::span<const double> probabilities)
    : status_(probabilities.size(), Status::fractional), probability_(probabilities.begin(), probabilities.end()) {
  require(!probabilities.empty(), "rounding state needs d >= 1");
  for (std::size_t i = 0; i < probability_.size(); ++i) {
    const double p = probability_[i];
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0, "probability outside [0, 1]");
    if (p == 0.0) status_[i] = Status::zero;
    if (p == 1.0) status_[i] = Status::one;
  }
}

double RoundingState::probability(std::size_t i) const {
  switch (status_[i]) {
    case Status::zero:
      return 0.0;
    case Status::one:
      return 1.0;
    case Status::fractional:
      break;
  }
  return probability_[i];
}

void RoundingState::fix(std::size_t i, bool value) {
  require(i < status_.size(), "rounding index out of range");
  require(!fixed(i), "coordinate " + std::to_string(i) + " is already fixed");
  status_[i] = value ? Status::one : Status::zero;
  probability_[i] = value ? 1.0 : 0.0;
}

Bundle RoundingState::to_bundle() const {
  Vector x(size());
  for (std::size_t i = 0; i < size(); ++i) x[i] = probability(i);
  return Bundle(std::move(x));
}

double expected_surplus(const GraphInstance& g, const RoundingState& state) {
  require(state.size() == g.nodes(), "rounding state dimension does not match the graph");
  double total = 0.0;
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    double term = state.probability(i);
    for (std::size_t j : g.neighbors(i)) term *= 1.0 - state.probability(j);
    total += term;
  }
  return total;
}

Bundle derandomize(const GraphInstance& g, std::span<const double> xbar) {
  check_unit_cube(g, xbar);
  RoundingState state(xbar);
  std::vector<mpq_class> p(g.nodes());
  for (std::size_t i = 0; i < g.nodes(); ++i) p[i] = mpq_class(state.probability(i));
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    if (state.fixed(i)) continue;
    p[i] = 1;
    const mpq_class with_one = exact_expectation(g, p);
    p[i] = 0;
    const mpq_class with_zero = exact_expectation(g, p);
    const bool one = with_one >= with_zero;
    state.fix(i, one);
    p[i] = one ? 1 : 0;
  }
  return state.to_bundle();
}

}  // namespace padd
