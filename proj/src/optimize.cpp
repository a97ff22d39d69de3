#include "padd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>

#include "padd/error.hpp"

namespace padd {

ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double x_tol, int max_iter) {
  constexpr double kInvPhi = 0.6180339887498949;
  ScalarMax best{lo, f(lo)};
  auto consider = [&](double x, double v) {
    if (v > best.value) best = {x, v};
  };
  consider(hi, f(hi));
  if (!(hi > lo)) return best;

  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < max_iter && (b - a) > x_tol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

bool better_point(double va, const Vector& a, double vb, const Vector& b, TiePreference prefer,
                  double tie_tol) {
  const double scale = std::max({1.0, std::abs(va), std::abs(vb)});
  if (va > vb + tie_tol * scale) return true;
  if (vb > va + tie_tol * scale) return false;
  return prefer == TiePreference::lex_smallest ? lex_less(a, b) : lex_less(b, a);
}

ScalarMax grid_golden_max(const std::function<double(double)>& f, double lo, double hi,
                          std::size_t grid_n, TiePreference prefer, double tie_tol) {
  if (!(hi > lo)) return {lo, f(lo)};
  grid_n = std::max<std::size_t>(grid_n, 3);
  Vector xs(grid_n);
  Vector vs(grid_n);
  for (std::size_t k = 0; k < grid_n; ++k) {
    xs[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid_n - 1);
    vs[k] = f(xs[k]);
  }
  xs.back() = hi;
  vs.back() = f(hi);

  auto better = [&](double va, double a, double vb, double b) {
    return better_point(va, Vector{a}, vb, Vector{b}, prefer, tie_tol);
  };
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid_n; ++k) {
    if (better(vs[k], xs[k], vs[best], xs[best])) best = k;
  }
  ScalarMax out{xs[best], vs[best]};

  // refine around the best few local maxima of the grid
  std::vector<std::size_t> order(grid_n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vs[a] > vs[b]; });
  std::vector<std::size_t> starts;
  for (std::size_t k : order) {
    if (starts.size() >= 3) break;
    bool near = false;
    for (std::size_t s : starts) near = near || (k + 1 >= s && k <= s + 1);
    if (!near) starts.push_back(k);
  }
  for (std::size_t k : starts) {
    const double a = xs[k == 0 ? 0 : k - 1];
    const double b = xs[std::min(k + 1, grid_n - 1)];
    const ScalarMax r = golden_section_max(f, a, b);
    if (better(r.value, r.x, out.value, out.x)) out = r;
  }
  return out;
}

std::size_t default_grid_per_dim(std::size_t dim) {
  switch (dim) {
    case 1:
      return 2001;
    case 2:
      return 201;
    case 3:
      return 51;
    default:
      return 21;
  }
}

std::size_t worker_count() {
  if (const char* env = std::getenv("PADD_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, n / 256));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

Vector grid_point(std::size_t index, const std::vector<Vector>& axes) {
  Vector x(axes.size());
  for (std::size_t i = axes.size(); i-- > 0;) {
    const std::size_t n = axes[i].size();
    x[i] = axes[i][index % n];
    index /= n;
  }
  return x;
}

std::vector<std::size_t> grid_coords(std::size_t index, const std::vector<Vector>& axes) {
  std::vector<std::size_t> c(axes.size());
  for (std::size_t i = axes.size(); i-- > 0;) {
    const std::size_t n = axes[i].size();
    c[i] = index % n;
    index /= n;
  }
  return c;
}

}  // namespace

BoxMax maximize_over_box(const std::function<double(const Vector&)>& f, const BoxDomain& box,
                         const BoxMaxOptions& opts) {
  const std::size_t d = box.dim();
  std::vector<Vector> axes;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    axes.push_back(linspace_upper(box.upper(i), std::max<std::size_t>(opts.grid_per_dim, 2)));
    total *= axes.back().size();
  }

  Vector values(total);
  parallel_for(total, [&](std::size_t k) { values[k] = f(grid_point(k, axes)); });

  std::size_t best_index = 0;
  Vector best_x = grid_point(0, axes);
  for (std::size_t k = 1; k < total; ++k) {
    Vector x = grid_point(k, axes);
    if (better_point(values[k], x, values[best_index], best_x, opts.prefer, opts.tie_tol)) {
      best_index = k;
      best_x = std::move(x);
    }
  }
  BoxMax out{best_x, values[best_index]};

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<std::vector<std::size_t>> starts{grid_coords(best_index, axes)};
  for (std::size_t k : order) {
    if (starts.size() >= opts.starts) break;
    const auto c = grid_coords(k, axes);
    bool near = false;
    for (const auto& s : starts) {
      std::size_t cheb = 0;
      for (std::size_t i = 0; i < d; ++i) cheb = std::max(cheb, c[i] > s[i] ? c[i] - s[i] : s[i] - c[i]);
      near = near || cheb <= 1;
    }
    if (!near) starts.push_back(c);
  }

  for (const auto& s : starts) {
    Vector x(d);
    Vector lo(d);
    Vector hi(d);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = axes[i][s[i]];
      lo[i] = axes[i][s[i] == 0 ? 0 : s[i] - 1];
      hi[i] = axes[i][std::min(s[i] + 1, axes[i].size() - 1)];
    }
    double fx = f(x);
    for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
      const Vector before = x;
      for (std::size_t i = 0; i < d; ++i) {
        const ScalarMax r = golden_section_max(
            [&](double t) {
              Vector y = x;
              y[i] = t;
              return f(y);
            },
            lo[i], hi[i]);
        if (r.value > fx) {
          x[i] = r.x;
          fx = r.value;
        }
      }
      if (d == 1 || x == before) break;
    }
    if (better_point(fx, x, out.value, out.x, opts.prefer, opts.tie_tol)) out = {x, fx};
  }
  return out;
}

BoxMax maximize_over_vertices(const std::function<double(const Vector&)>& f, const BoxDomain& box,
                              TiePreference prefer, double tie_tol) {
  const std::size_t d = box.dim();
  require(d <= 24, "vertex enumeration limited to d <= 24");
  const std::size_t total = std::size_t{1} << d;
  Vector values(total);
  auto vertex = [&](std::size_t mask) {
    Vector x(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      if (mask & (std::size_t{1} << (d - 1 - i))) x[i] = box.upper(i);
    }
    return x;
  };
  parallel_for(total, [&](std::size_t m) { values[m] = f(vertex(m)); });
  BoxMax out{vertex(0), values[0]};
  for (std::size_t m = 1; m < total; ++m) {
    Vector x = vertex(m);
    if (better_point(values[m], x, out.value, out.x, prefer, tie_tol)) out = {std::move(x), values[m]};
  }
  return out;
}

}  // namespace padd
