#include "frontprop/heat.hpp"

#include <cmath>

#include "frontprop/par.hpp"

namespace frontprop {

namespace {

// 5-point (3-point in 1D) Laplacian with mirrored ghost cells: the face
// term simply drops at a Neumann wall.
void laplacian(const Grid& g, const std::vector<double>& v, std::vector<double>& out) {
  const int nx = g.n[0], ny = g.n[1];
  const double inv_h2 = 1.0 / (g.h * g.h);
  for_blocks(g.size(), [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int i = static_cast<int>(k % nx);
      const int j = static_cast<int>(k / nx);
      const double c = v[k];
      double acc = 0.0;
      if (i > 0) acc += v[k - 1] - c;
      if (i < nx - 1) acc += v[k + 1] - c;
      if (g.dim == 2) {
        if (j > 0) acc += v[k - nx] - c;
        if (j < ny - 1) acc += v[k + nx] - c;
      }
      out[k] = acc * inv_h2;
    }
  });
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return sum_blocks(a.size(), [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t k = lo; k < hi; ++k) acc += a[k] * b[k];
    return acc;
  });
}

}  // namespace

HeatState heat_step_source(const HeatState& state, const ScalarField& source, double dt) {
  require(dt > 0, Err::BadConfig, "heat step needs dt > 0");
  const Grid& g = state.v.grid;
  require(source.grid.same_as(g), Err::GridMismatch, "source grid differs");
  const std::size_t n = g.size();
  const double a = 0.5 * dt;

  // rhs = v + (dt/2) Lap v + dt * source
  std::vector<double> lap(n), rhs(n);
  laplacian(g, state.v.v, lap);
  for (std::size_t k = 0; k < n; ++k)
    rhs[k] = state.v.v[k] + a * lap[k] + dt * source.v[k];

  // CG on (I - dt/2 Lap) x = rhs, warm-started at v.
  std::vector<double> x = state.v.v, r(n), p(n), ap(n);
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    laplacian(g, in, out);
    for (std::size_t k = 0; k < n; ++k) out[k] = in[k] - a * out[k];
  };
  apply(x, ap);
  for (std::size_t k = 0; k < n; ++k) r[k] = rhs[k] - ap[k];
  p = r;
  double rr = dot(r, r);
  const double b_norm = std::sqrt(dot(rhs, rhs));
  const double tol = 1e-10 * std::max(1.0, b_norm);
  const int max_iter = 2000;
  int it = 0;
  while (std::sqrt(rr) > tol) {
    require(it++ < max_iter, Err::SolverDivergence, "CG failed to reach 1e-10");
    apply(p, ap);
    const double alpha = rr / dot(p, ap);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    const double rr_next = dot(r, r);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
  }

  HeatState out;
  out.v = ScalarField(g, 0.0, state.time + dt);
  out.v.v = std::move(x);
  out.time = state.time + dt;
  return out;
}

}  // namespace frontprop
