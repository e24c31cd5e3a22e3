#include "frontprop/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "frontprop/par.hpp"

namespace frontprop {

namespace {

constexpr double kInf = 1e20;

// 1D squared-distance transform: d[i] = min_j (i-j)^2 + f[j], in cell
// units. Lower envelope of parabolas (Felzenszwalb-Huttenlocher).
void dt1d(const double* f, double* d, int n, int* v, double* z) {
  int q0 = 0;
  while (q0 < n && f[q0] >= kInf) ++q0;
  if (q0 == n) {  // no source in this line
    for (int q = 0; q < n; ++q) d[q] = kInf;
    return;
  }
  int k = 0;
  v[0] = q0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = q0 + 1; q < n; ++q) {
    if (f[q] >= kInf) continue;
    double s;
    for (;;) {
      int p = v[k];
      s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const int p = v[k];
    d[q] = (q - p) * static_cast<double>(q - p) + f[p];
  }
}

// Squared distance (in cell units) from every cell to the nearest source
// cell (source[k] true).
std::vector<double> edt_sq(const Grid& g, const std::vector<char>& source) {
  const int nx = g.n[0], ny = g.n[1];
  std::vector<double> d(g.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = source[k] ? 0.0 : kInf;
  if (g.dim == 1) {
    std::vector<int> v(nx + 1);
    std::vector<double> z(nx + 1), out(nx);
    dt1d(d.data(), out.data(), nx, v.data(), z.data());
    return out;
  }
  // Pass 1: along x per row.
  for_blocks(ny, [&](std::size_t, std::size_t lo, std::size_t hi) {
    std::vector<int> v(nx + 1);
    std::vector<double> z(nx + 1), row(nx), out(nx);
    for (std::size_t j = lo; j < hi; ++j) {
      for (int i = 0; i < nx; ++i) row[i] = d[g.idx(i, static_cast<int>(j))];
      dt1d(row.data(), out.data(), nx, v.data(), z.data());
      for (int i = 0; i < nx; ++i) d[g.idx(i, static_cast<int>(j))] = out[i];
    }
  });
  // Pass 2: along y per column.
  for_blocks(nx, [&](std::size_t, std::size_t lo, std::size_t hi) {
    std::vector<int> v(ny + 1);
    std::vector<double> z(ny + 1), col(ny), out(ny);
    for (std::size_t i = lo; i < hi; ++i) {
      for (int j = 0; j < ny; ++j) col[j] = d[g.idx(static_cast<int>(i), j)];
      dt1d(col.data(), out.data(), ny, v.data(), z.data());
      for (int j = 0; j < ny; ++j) d[g.idx(static_cast<int>(i), j)] = out[j];
    }
  });
  return d;
}

}  // namespace

ScalarField signed_distance(const ScalarField& indicator) {
  const Grid& g = indicator.grid;
  std::vector<char> inside(g.size()), outside(g.size());
  std::size_t n_in = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    inside[k] = indicator.v[k] >= 0.5;
    outside[k] = !inside[k];
    n_in += inside[k];
  }
  require(n_in > 0, Err::EmptyShape, "indicator has empty interior");
  require(n_in < g.size(), Err::FullShape, "indicator has empty complement");

  const std::vector<double> d_in = edt_sq(g, inside);
  const std::vector<double> d_out = edt_sq(g, outside);

  ScalarField sd(g, 0.0, indicator.time);
  const double half = 0.5 * g.h;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (inside[k])
      sd.v[k] = -(g.h * std::sqrt(d_out[k]) - half);
    else
      sd.v[k] = g.h * std::sqrt(d_in[k]) - half;
  }
  return sd;
}

namespace {

// Per-axis one-sided differences; replicated value beyond the border.
struct AxisDiffs {
  double backward, forward;
};

AxisDiffs axis_diffs(const ScalarField& u, int i, int j, int axis) {
  const Grid& g = u.grid;
  const int ni = g.n[axis];
  const int c = axis == 0 ? i : j;
  auto val = [&](int q) { return axis == 0 ? u.at(q, j) : u.at(i, q); };
  AxisDiffs d{0.0, 0.0};
  if (ni == 1) return d;
  d.backward = c > 0 ? (val(c) - val(c - 1)) / g.h : 0.0;
  d.forward = c < ni - 1 ? (val(c + 1) - val(c)) / g.h : 0.0;
  if (c == 0) d.backward = d.forward;
  if (c == ni - 1) d.forward = d.backward;
  return d;
}

// Gradient magnitude for the (H2) scan. Returns the centered value at
// smooth cells; at kink cells (one-sided differences disagree beyond the
// curvature scale) the larger one-sided magnitude per axis.
double h2_gradient(const ScalarField& u, int i, int j, bool* kink) {
  const Grid& g = u.grid;
  const double kink_tol = 20.0 * g.h;
  double sum_sq = 0.0;
  bool any_kink = false;
  for (int axis = 0; axis < g.dim; ++axis) {
    AxisDiffs d = axis_diffs(u, i, j, axis);
    if (std::abs(d.forward - d.backward) > kink_tol) {
      any_kink = true;
      double m = std::max(std::abs(d.forward), std::abs(d.backward));
      sum_sq += m * m;
    } else {
      double m = 0.5 * (d.forward + d.backward);
      sum_sq += m * m;
    }
  }
  if (kink) *kink = any_kink;
  return std::sqrt(sum_sq);
}

}  // namespace

H2Certificate h2_certificate(const ScalarField& u0) {
  const Grid& g = u0.grid;
  H2Certificate cert;
  double min_sum = std::numeric_limits<double>::infinity();
  int kinks = 0;
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      bool kink = false;
      double grad = h2_gradient(u0, i, j, &kink);
      kinks += kink;
      min_sum = std::min(min_sum, std::abs(u0.at(i, j)) + grad);
    }
  cert.eta0 = std::max(0.0, min_sum * (1.0 - 1e-12));
  cert.kink_cells = kinks;
  cert.worst_slack = min_sum - cert.eta0;
  return cert;
}

double h2_violation(const ScalarField& u0, double eta0) {
  const Grid& g = u0.grid;
  double worst = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      double grad = h2_gradient(u0, i, j, nullptr);
      worst = std::max(worst, eta0 - std::abs(u0.at(i, j)) - grad);
    }
  return worst;
}

InitialDatum build_truncated_sdf(const ScalarField& shape, double floor_value) {
  require(floor_value < 0, Err::BadConfig, "floor must be negative");
  const Grid& g = shape.grid;

  // Condition at infinity needs the profile to reach the floor before the
  // grid boundary; a shape touching the border cannot satisfy it.
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      bool border = i == 0 || i == g.n[0] - 1 || (g.dim == 2 && (j == 0 || j == g.n[1] - 1));
      if (border && shape.at(i, j) >= 0.5)
        fail(Err::NoEta, "shape touches the grid boundary");
    }

  ScalarField sd = signed_distance(shape);
  ScalarField profile(g, 0.0, shape.time);
  for (std::size_t k = 0; k < g.size(); ++k)
    profile.v[k] = std::max(-sd.v[k], floor_value);
  return datum_from_profile(profile, floor_value);
}

InitialDatum datum_from_profile(const ScalarField& profile, double floor_value) {
  require(floor_value < 0, Err::BadConfig, "floor must be negative");
  const Grid& g = profile.grid;
  InitialDatum datum;
  datum.floor_value = floor_value;
  datum.field = profile;
  double r0 = 0.0, r_front = 0.0;
  bool any_positive = false;
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      const double u = datum.field.at(i, j);
      require(u >= floor_value - 1e-12, Err::BadConfig, "profile dips below the floor");
      any_positive = any_positive || u > 0;
      if (u > floor_value + 1e-12) r0 = std::max(r0, g.radius(i, j));
      if (u >= 0) r_front = std::max(r_front, g.radius(i, j));
    }
  require(any_positive, Err::EmptyShape, "{u0 > 0} is empty");
  datum.R0 = std::min(r0 + g.h, g.inscribed_radius());
  datum.front_radius = r_front;
  // Condition at infinity, with one cell of value slack at the walls.
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      const bool border = i == 0 || i == g.n[0] - 1 || (g.dim == 2 && (j == 0 || j == g.n[1] - 1));
      if (border)
        require(datum.field.at(i, j) <= floor_value + g.h * (1 + 1e-9), Err::NoEta,
                "floor value not reached at the grid boundary");
    }

  datum.cert = h2_certificate(datum.field);
  require(datum.cert.eta0 > 1e-9, Err::NoEta, "discrete (H2) fails for all eta0");
  datum.eta0 = datum.cert.eta0;
  datum.du0_inf = max_grad_centered(datum.field);
  return datum;
}

}  // namespace frontprop
