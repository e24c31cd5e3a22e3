#pragma once
#include <array>
#include <cmath>
#include <vector>

#include "frontprop/errors.hpp"

namespace frontprop {

// Uniform cell-centered grid, dim in {1,2}, identical spacing per axis.
// Cell (i,j) sits at (origin[0] + i*h, origin[1] + j*h); in 1D n[1]==1.
struct Grid {
  int dim = 2;
  double h = 0.0;
  std::array<int, 2> n{1, 1};
  std::array<double, 2> origin{0.0, 0.0};

  // Symmetric grid covering [-half_width, half_width]^dim with a cell
  // center exactly at the origin (odd extents).
  static Grid centered(double half_width, double h, int dim = 2);

  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]);
  }
  std::size_t idx(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * n[0] + i;
  }
  double x(int i) const { return origin[0] + i * h; }
  double y(int j) const { return origin[1] + j * h; }
  double radius(int i, int j) const {
    return dim == 1 ? std::abs(x(i)) : std::hypot(x(i), y(j));
  }
  double cell_volume() const { return dim == 1 ? h : h * h; }
  // Largest R such that B(0,R) is inside the grid box.
  double inscribed_radius() const;

  bool same_as(const Grid& o) const;
  void validate() const;  // h > 0, extents >= 8 per axis, dim in {1,2}
};

// Real-valued function sampled at cell centers at one time instant.
struct ScalarField {
  Grid grid;
  std::vector<double> v;
  double time = 0.0;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0, double t = 0.0)
      : grid(g), v(g.size(), fill), time(t) {}

  double& at(int i, int j = 0) { return v[grid.idx(i, j)]; }
  double at(int i, int j = 0) const { return v[grid.idx(i, j)]; }

  double min() const;
  double max() const;
  bool all_finite() const;

  // Bilinear (linear in 1D) interpolation at a physical point, clamped to
  // the grid box.
  double interp(double px, double py = 0.0) const;

  template <class F>
  static ScalarField from_function(const Grid& g, F f, double t = 0.0) {
    ScalarField out(g, 0.0, t);
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i)
        out.at(i, j) = (g.dim == 1) ? f(g.x(i), 0.0) : f(g.x(i), g.y(j));
    return out;
  }
};

// Space-time occupancy field: ordered (time, frame) pairs, values in [0,1].
struct PhaseIndicator {
  Grid grid;
  std::vector<double> times;
  std::vector<std::vector<float>> frames;

  std::size_t frame_count() const { return times.size(); }
  // Index of the frame holding at time t (largest recorded time <= t).
  std::size_t frame_at(double t) const;
  void validate() const;  // strictly increasing times, matching sizes

  static PhaseIndicator constant(const Grid& g, double value, double t_end);
  static PhaseIndicator single(const ScalarField& indicator, double t_end);
};

// Indicator of {u >= level}: 1 where u >= level else 0 (closed-set rule).
ScalarField indicator_of_superlevel(const ScalarField& u, double level = 0.0);

// --- gradient probes -------------------------------------------------------

// Centered-difference gradient magnitude at one cell (one-sided at the
// grid border).
double grad_centered(const ScalarField& u, int i, int j);
// sup_x |Du| with the centered stencil.
double max_grad_centered(const ScalarField& u);
// Largest one-sided difference |u(b)-u(a)|/h over neighbor pairs; this is
// the discrete Lipschitz constant of the sampled field.
double lipschitz_discrete(const ScalarField& u);

// --- measures --------------------------------------------------------------

// L^N({u >= a}) with a per-cell linear sub-cell correction: within each
// cell u is treated as spanning [u_c - s/2, u_c + s/2], s = h*|Du|_c.
double superlevel_measure(const ScalarField& u, double a);

// L^N({a <= u <= b}) with the same sub-cell correction at both level
// crossings. Throws BadBand if a >= b.
double band_measure(const ScalarField& u, double a, double b);

// max over cells of |u1 - u2|. Throws GridMismatch.
double sup_norm_difference(const ScalarField& u1, const ScalarField& u2);

}  // namespace frontprop
