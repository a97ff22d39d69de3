#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "padd/bundle.hpp"

namespace padd {

/// Which maximizer wins when objective values tie.
enum class TiePreference { lex_smallest, lex_largest };

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of f on [lo, hi]. The endpoints are
/// always scored, so boundary maxima of unimodal functions are found exactly.
ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double x_tol = 1e-12, int max_iter = 200);

/// Dense 1-D grid followed by golden-section refinement around the best cells.
ScalarMax grid_golden_max(const std::function<double(double)>& f, double lo, double hi,
                          std::size_t grid_n, TiePreference prefer, double tie_tol = 1e-12);

struct BoxMaxOptions {
  std::size_t grid_per_dim = 2001;
  std::size_t starts = 4;
  int sweeps = 4;
  /// relative tolerance under which two objective values are treated as equal
  double tie_tol = 1e-12;
  TiePreference prefer = TiePreference::lex_smallest;
};

struct BoxMax {
  Vector x;
  double value = 0.0;
};

/// Maximizes f over the box by a full grid (evaluated in parallel, reduced
/// deterministically) plus multi-start coordinate-wise golden refinement.
BoxMax maximize_over_box(const std::function<double(const Vector&)>& f, const BoxDomain& box,
                         const BoxMaxOptions& opts);

/// Maximum over the 2^d vertices of the box.
BoxMax maximize_over_vertices(const std::function<double(const Vector&)>& f, const BoxDomain& box,
                              TiePreference prefer, double tie_tol = 1e-12);

/// true when (va, a) beats (vb, b) under the tie rule.
bool better_point(double va, const Vector& a, double vb, const Vector& b, TiePreference prefer,
                  double tie_tol);

/// Grid points per coordinate used by the d-dimensional solvers.
std::size_t default_grid_per_dim(std::size_t dim);

/// Worker count from PADD_THREADS (falls back to hardware concurrency).
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) across worker threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace padd
