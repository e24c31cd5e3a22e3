#include "frontprop/convolution.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <vector>

namespace frontprop {

namespace {

// Smallest n' >= n with only factors {2,3,5,7} (fast FFTW sizes).
int next_fast(int n) {
  for (;; ++n) {
    int m = n;
    for (int f : {2, 3, 5, 7})
      while (m % f == 0) m /= f;
    if (m == 1) return n;
  }
}

// FFTW plans keyed by padded size; FFTW_ESTIMATE keeps planning
// deterministic. Guarded: plan creation is not thread-safe.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::pair<int, int>, PlanPair>& plan_cache() {
  static std::map<std::pair<int, int>, PlanPair> cache;
  return cache;
}

PlanPair plans_for(int n0, int n1, double* real_buf, fftw_complex* cplx_buf) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(n0, n1);
  auto it = plan_cache().find(key);
  if (it != plan_cache().end()) return it->second;
  PlanPair p;
  // FFTW_UNALIGNED lets the cached plan run on any caller buffer.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.fwd = fftw_plan_dft_r2c_2d(n1, n0, real_buf, cplx_buf, flags);
  p.inv = fftw_plan_dft_c2r_2d(n1, n0, cplx_buf, real_buf, flags);
  plan_cache()[key] = p;
  return p;
}

}  // namespace

ScalarField convolve(const ScalarField& f, const ScalarField& kernel) {
  const Grid& g = f.grid;
  const Grid& kg = kernel.grid;
  require(std::abs(g.h - kg.h) < 1e-14 * g.h, Err::GridMismatch,
          "kernel sampled at a different spacing");
  require(kg.n[0] % 2 == 1 && (g.dim == 1 || kg.n[1] % 2 == 1), Err::BadConfig,
          "kernel patch must have odd extents");
  require(kg.n[0] <= g.n[0] && kg.n[1] <= g.n[1], Err::PaddingTooSmall,
          "kernel patch larger than the field grid");

  const int nx = g.n[0], ny = g.n[1];
  const int kx = kg.n[0], ky = kg.n[1];
  const int px = next_fast(nx + kx - 1);
  const int py = g.dim == 2 ? next_fast(ny + ky - 1) : 1;
  const std::size_t preal = static_cast<std::size_t>(px) * py;
  const std::size_t pcplx = static_cast<std::size_t>(px / 2 + 1) * py;

  std::vector<double> buf_f(preal, 0.0), buf_k(preal, 0.0);
  std::vector<std::complex<double>> spec_f(pcplx), spec_k(pcplx);
  auto* cf = reinterpret_cast<fftw_complex*>(spec_f.data());
  auto* ck = reinterpret_cast<fftw_complex*>(spec_k.data());
  PlanPair plans = plans_for(px, py, buf_f.data(), cf);

  for (int j = 0; j < ny; ++j)
    std::memcpy(&buf_f[static_cast<std::size_t>(j) * px], &f.v[g.idx(0, j)],
                sizeof(double) * nx);
  for (int j = 0; j < ky; ++j)
    std::memcpy(&buf_k[static_cast<std::size_t>(j) * px], &kernel.v[kg.idx(0, j)],
                sizeof(double) * kx);

  fftw_execute_dft_r2c(plans.fwd, buf_f.data(), cf);
  fftw_execute_dft_r2c(plans.fwd, buf_k.data(), ck);
  for (std::size_t k = 0; k < pcplx; ++k) spec_f[k] *= spec_k[k];
  fftw_execute_dft_c2r(plans.inv, cf, buf_f.data());

  const double scale = g.cell_volume() / static_cast<double>(preal);
  const int cx = (kx - 1) / 2, cy = (ky - 1) / 2;
  ScalarField out(g, 0.0, f.time);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      out.at(i, j) = buf_f[static_cast<std::size_t>(j + cy) * px + (i + cx)] * scale;
  return out;
}

ScalarField convolve_direct(const ScalarField& f, const ScalarField& kernel) {
  const Grid& g = f.grid;
  const Grid& kg = kernel.grid;
  const int cx = (kg.n[0] - 1) / 2, cy = (kg.n[1] - 1) / 2;
  ScalarField out(g, 0.0, f.time);
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      double acc = 0.0;
      for (int qj = 0; qj < kg.n[1]; ++qj)
        for (int qi = 0; qi < kg.n[0]; ++qi) {
          const int si = i - (qi - cx);
          const int sj = j - (qj - cy);
          if (si < 0 || si >= g.n[0] || sj < 0 || sj >= g.n[1]) continue;
          acc += kernel.at(qi, qj) * f.at(si, sj);
        }
      out.at(i, j) = acc * g.cell_volume();
    }
  return out;
}

ScalarField gaussian_kernel(double s, double h, int dim, double radius_sigmas) {
  require(s > 0 && h > 0, Err::NonpositiveInput, "gaussian kernel needs s, h > 0");
  const double sigma = std::sqrt(2.0 * s);  // G(., s) has per-axis variance 2s
  int r = static_cast<int>(std::ceil(radius_sigmas * sigma / h));
  r = std::max(r, 1);
  Grid kg;
  kg.dim = dim;
  kg.h = h;
  kg.n[0] = 2 * r + 1;
  kg.n[1] = dim == 2 ? 2 * r + 1 : 1;
  kg.origin[0] = -r * h;
  kg.origin[1] = dim == 2 ? -r * h : 0.0;
  ScalarField k(kg, 0.0, 0.0);
  double sum = 0.0;
  for (int j = 0; j < kg.n[1]; ++j)
    for (int i = 0; i < kg.n[0]; ++i) {
      const double x = kg.x(i), y = dim == 2 ? kg.y(j) : 0.0;
      const double r2 = x * x + y * y;
      const double val = std::exp(-r2 / (4.0 * s));
      k.at(i, j) = val;
      sum += val;
    }
  const double norm = 1.0 / (sum * kg.cell_volume());
  for (double& v : k.v) v *= norm;
  return k;
}

}  // namespace frontprop
