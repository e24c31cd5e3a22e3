#include "frontprop/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frontprop/par.hpp"

namespace frontprop {

Grid Grid::centered(double half_width, double h, int dim) {
  require(h > 0 && half_width > 0, Err::BadConfig, "grid needs h > 0, half_width > 0");
  Grid g;
  g.dim = dim;
  g.h = h;
  const int m = static_cast<int>(std::llround(half_width / h));
  g.n[0] = 2 * m + 1;
  g.origin[0] = -m * h;
  if (dim == 2) {
    g.n[1] = 2 * m + 1;
    g.origin[1] = -m * h;
  } else {
    g.n[1] = 1;
    g.origin[1] = 0.0;
  }
  g.validate();
  return g;
}

double Grid::inscribed_radius() const {
  double r = std::min(-origin[0], origin[0] + (n[0] - 1) * h);
  if (dim == 2) {
    r = std::min(r, -origin[1]);
    r = std::min(r, origin[1] + (n[1] - 1) * h);
  }
  return r;
}

bool Grid::same_as(const Grid& o) const {
  return dim == o.dim && n == o.n && h == o.h && origin == o.origin;
}

void Grid::validate() const {
  require(dim == 1 || dim == 2, Err::BadConfig, "dim must be 1 or 2");
  require(h > 0, Err::BadConfig, "spacing must be positive");
  require(n[0] >= 8, Err::BadConfig, "extent must be >= 8 cells");
  if (dim == 2) require(n[1] >= 8, Err::BadConfig, "extent must be >= 8 cells");
}

double ScalarField::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) m = std::min(m, x);
  return m;
}

double ScalarField::max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return m;
}

bool ScalarField::all_finite() const {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double ScalarField::interp(double px, double py) const {
  const Grid& g = grid;
  double fx = (px - g.origin[0]) / g.h;
  fx = std::clamp(fx, 0.0, static_cast<double>(g.n[0] - 1));
  int i0 = std::min(static_cast<int>(fx), g.n[0] - 2);
  if (g.n[0] == 1) i0 = 0;
  double tx = fx - i0;
  if (g.dim == 1) {
    if (g.n[0] == 1) return v[0];
    return (1 - tx) * at(i0) + tx * at(i0 + 1);
  }
  double fy = (py - g.origin[1]) / g.h;
  fy = std::clamp(fy, 0.0, static_cast<double>(g.n[1] - 1));
  int j0 = std::min(static_cast<int>(fy), g.n[1] - 2);
  double ty = fy - j0;
  return (1 - tx) * (1 - ty) * at(i0, j0) + tx * (1 - ty) * at(i0 + 1, j0) +
         (1 - tx) * ty * at(i0, j0 + 1) + tx * ty * at(i0 + 1, j0 + 1);
}

std::size_t PhaseIndicator::frame_at(double t) const {
  require(!times.empty(), Err::BadConfig, "phase indicator has no frames");
  std::size_t k = 0;
  while (k + 1 < times.size() && times[k + 1] <= t + 1e-14) ++k;
  return k;
}

void PhaseIndicator::validate() const {
  require(times.size() == frames.size(), Err::BadConfig, "times/frames size mismatch");
  for (std::size_t k = 0; k < times.size(); ++k) {
    require(frames[k].size() == grid.size(), Err::BadConfig, "frame size mismatch");
    if (k > 0)
      require(times[k] > times[k - 1], Err::BadConfig, "frame times must increase");
  }
}

PhaseIndicator PhaseIndicator::constant(const Grid& g, double value, double t_end) {
  PhaseIndicator chi;
  chi.grid = g;
  chi.times = {0.0, std::max(t_end, 1e-12)};
  chi.frames.assign(2, std::vector<float>(g.size(), static_cast<float>(value)));
  return chi;
}

PhaseIndicator PhaseIndicator::single(const ScalarField& indicator, double t_end) {
  PhaseIndicator chi;
  chi.grid = indicator.grid;
  chi.times = {0.0, std::max(t_end, 1e-12)};
  std::vector<float> f(indicator.v.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = static_cast<float>(indicator.v[k]);
  chi.frames = {f, f};
  return chi;
}

ScalarField indicator_of_superlevel(const ScalarField& u, double level) {
  ScalarField out(u.grid, 0.0, u.time);
  for (std::size_t k = 0; k < u.v.size(); ++k) out.v[k] = u.v[k] >= level ? 1.0 : 0.0;
  return out;
}

namespace {
// Per-axis centered difference; falls back to one-sided at the border.
inline double diff_axis(const ScalarField& u, int i, int j, int axis) {
  const Grid& g = u.grid;
  const int ni = g.n[axis];
  const int c = axis == 0 ? i : j;
  const double h = g.h;
  auto val = [&](int q) { return axis == 0 ? u.at(q, j) : u.at(i, q); };
  if (ni == 1) return 0.0;
  if (c == 0) return (val(1) - val(0)) / h;
  if (c == ni - 1) return (val(ni - 1) - val(ni - 2)) / h;
  return (val(c + 1) - val(c - 1)) / (2 * h);
}
}  // namespace

double grad_centered(const ScalarField& u, int i, int j) {
  double gx = diff_axis(u, i, j, 0);
  if (u.grid.dim == 1) return std::abs(gx);
  double gy = diff_axis(u, i, j, 1);
  return std::hypot(gx, gy);
}

double max_grad_centered(const ScalarField& u) {
  const Grid& g = u.grid;
  return max_blocks(g.size(), [&](std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      int i = static_cast<int>(k % g.n[0]);
      int j = static_cast<int>(k / g.n[0]);
      m = std::max(m, grad_centered(u, i, j));
    }
    return m;
  });
}

double lipschitz_discrete(const ScalarField& u) {
  const Grid& g = u.grid;
  return max_blocks(g.size(), [&](std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      int i = static_cast<int>(k % g.n[0]);
      int j = static_cast<int>(k / g.n[0]);
      if (i + 1 < g.n[0]) m = std::max(m, std::abs(u.at(i + 1, j) - u.at(i, j)) / g.h);
      if (j + 1 < g.n[1]) m = std::max(m, std::abs(u.at(i, j + 1) - u.at(i, j)) / g.h);
    }
    return m;
  });
}

namespace {
// Fraction of the in-cell value span [u - s/2, u + s/2] lying in [a, b].
inline double cell_fraction(double u, double s, double a, double b) {
  if (s < 1e-14) return (u >= a && u <= b) ? 1.0 : 0.0;
  const double lo = u - 0.5 * s, hi = u + 0.5 * s;
  const double overlap = std::min(hi, b) - std::max(lo, a);
  return std::clamp(overlap / s, 0.0, 1.0);
}
}  // namespace

double superlevel_measure(const ScalarField& u, double a) {
  const Grid& g = u.grid;
  const double cellv = g.cell_volume();
  double total = sum_blocks(g.size(), [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      int i = static_cast<int>(k % g.n[0]);
      int j = static_cast<int>(k / g.n[0]);
      double s = g.h * grad_centered(u, i, j);
      acc += cell_fraction(u.v[k], s, a, std::numeric_limits<double>::infinity());
    }
    return acc;
  });
  return total * cellv;
}

double band_measure(const ScalarField& u, double a, double b) {
  require(a < b, Err::BadBand, "band requires a < b");
  const Grid& g = u.grid;
  const double cellv = g.cell_volume();
  double total = sum_blocks(g.size(), [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      int i = static_cast<int>(k % g.n[0]);
      int j = static_cast<int>(k / g.n[0]);
      double s = g.h * grad_centered(u, i, j);
      acc += cell_fraction(u.v[k], s, a, b);
    }
    return acc;
  });
  return total * cellv;
}

double sup_norm_difference(const ScalarField& u1, const ScalarField& u2) {
  require(u1.grid.same_as(u2.grid), Err::GridMismatch, "fields on different grids");
  return max_blocks(u1.v.size(), [&](std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t k = lo; k < hi; ++k) m = std::max(m, std::abs(u1.v[k] - u2.v[k]));
    return m;
  });
}

}  // namespace frontprop
