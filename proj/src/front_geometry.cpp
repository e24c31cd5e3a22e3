#include "frontprop/front_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace frontprop {

namespace {

// Edge key: (ix, iy, orientation); orientation 0 = horizontal edge from
// corner (ix,iy) to (ix+1,iy), 1 = vertical edge to (ix,iy+1).
struct EdgeKey {
  int ix, iy, orient;
  bool operator<(const EdgeKey& o) const {
    return std::tie(ix, iy, orient) < std::tie(o.ix, o.iy, o.orient);
  }
};

struct Segment {
  EdgeKey to;
  Point from_pt, to_pt;
};

Point edge_point(const ScalarField& u, double level, const EdgeKey& e) {
  const Grid& g = u.grid;
  const double ua = u.at(e.ix, e.iy);
  const double ub = e.orient == 0 ? u.at(e.ix + 1, e.iy) : u.at(e.ix, e.iy + 1);
  const double t = (level - ua) / (ub - ua);  // crossing edges have ua != ub
  if (e.orient == 0) return {g.x(e.ix) + t * g.h, g.y(e.iy)};
  return {g.x(e.ix), g.y(e.iy) + t * g.h};
}

FrontSet extract_front_1d(const ScalarField& u, double level) {
  const Grid& g = u.grid;
  FrontSet front;
  front.level = level;
  front.enclosed = indicator_of_superlevel(u, level);
  bool any = false;
  for (int i = 0; i < g.n[0]; ++i) any = any || u.at(i) >= level;
  require(any, Err::EmptyLevelSet, "no cell reaches the level");
  require(u.at(0) < level && u.at(g.n[0] - 1) < level, Err::TouchesBoundary,
          "level set touches the grid boundary");
  for (int i = 0; i + 1 < g.n[0]; ++i) {
    const bool a = u.at(i) >= level, b = u.at(i + 1) >= level;
    if (a == b) continue;
    const double t = (level - u.at(i)) / (u.at(i + 1) - u.at(i));
    front.polylines.push_back({Point{g.x(i) + t * g.h, 0.0}});
  }
  return front;
}

}  // namespace

FrontSet extract_front(const ScalarField& u, double level) {
  const Grid& g = u.grid;
  if (g.dim == 1) return extract_front_1d(u, level);

  bool any = false;
  for (int j = 0; j < g.n[1] && !any; ++j)
    for (int i = 0; i < g.n[0] && !any; ++i) any = u.at(i, j) >= level;
  require(any, Err::EmptyLevelSet, "no cell reaches the level");
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      const bool border = i == 0 || i == g.n[0] - 1 || j == 0 || j == g.n[1] - 1;
      if (border && u.at(i, j) >= level)
        fail(Err::TouchesBoundary, "level set touches the grid boundary");
    }

  // Segments oriented with the inside on the left; each crossed edge is a
  // "from" in exactly one dual cell, so the walk below closes every loop.
  std::map<EdgeKey, Segment> segs;
  auto emit = [&](const EdgeKey& from, const EdgeKey& to) {
    segs[from] = Segment{to, edge_point(u, level, from), edge_point(u, level, to)};
  };
  for (int j = 0; j + 1 < g.n[1]; ++j)
    for (int i = 0; i + 1 < g.n[0]; ++i) {
      const int code = (u.at(i, j) >= level ? 1 : 0) | (u.at(i + 1, j) >= level ? 2 : 0) |
                       (u.at(i + 1, j + 1) >= level ? 4 : 0) |
                       (u.at(i, j + 1) >= level ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const EdgeKey e0{i, j, 0}, e1{i + 1, j, 1}, e2{i, j + 1, 0}, e3{i, j, 1};
      switch (code) {
        case 1: emit(e0, e3); break;
        case 2: emit(e1, e0); break;
        case 3: emit(e1, e3); break;
        case 4: emit(e2, e1); break;
        case 5: {
          const double center =
              0.25 * (u.at(i, j) + u.at(i + 1, j) + u.at(i, j + 1) + u.at(i + 1, j + 1));
          if (center >= level) {
            emit(e0, e1);
            emit(e2, e3);
          } else {
            emit(e0, e3);
            emit(e2, e1);
          }
          break;
        }
        case 6: emit(e2, e0); break;
        case 7: emit(e2, e3); break;
        case 8: emit(e3, e2); break;
        case 9: emit(e0, e2); break;
        case 10: {
          const double center =
              0.25 * (u.at(i, j) + u.at(i + 1, j) + u.at(i, j + 1) + u.at(i + 1, j + 1));
          if (center >= level) {
            emit(e3, e0);
            emit(e1, e2);
          } else {
            emit(e1, e0);
            emit(e3, e2);
          }
          break;
        }
        case 11: emit(e1, e2); break;
        case 12: emit(e3, e1); break;
        case 13: emit(e0, e1); break;
        case 14: emit(e3, e0); break;
        default: break;
      }
    }

  FrontSet front;
  front.level = level;
  front.enclosed = indicator_of_superlevel(u, level);
  std::map<EdgeKey, bool> visited;
  for (const auto& [start, seg0] : segs) {
    if (visited.count(start)) continue;
    std::vector<Point> loop;
    EdgeKey cur = start;
    for (;;) {
      visited[cur] = true;
      const Segment& s = segs.at(cur);
      loop.push_back(s.from_pt);
      cur = s.to;
      if (!(cur < start) && !(start < cur)) break;  // back at the start edge
      require(segs.count(cur) > 0, Err::BadConfig, "open contour chain");
    }
    front.polylines.push_back(std::move(loop));
  }
  return front;
}

double perimeter(const FrontSet& front) {
  if (!front.polylines.empty() && front.polylines.front().size() == 1)
    return static_cast<double>(front.polylines.size());  // 1D crossing count
  double total = 0.0;
  for (const auto& loop : front.polylines) {
    for (std::size_t k = 0; k < loop.size(); ++k) {
      const Point& a = loop[k];
      const Point& b = loop[(k + 1) % loop.size()];
      total += std::hypot(b[0] - a[0], b[1] - a[1]);
    }
  }
  return total;
}

double perimeter_in_ball(const FrontSet& front, double R) {
  double total = 0.0;
  const double R2 = R * R;
  for (const auto& loop : front.polylines) {
    if (loop.size() == 1) {  // 1D
      if (loop[0][0] * loop[0][0] <= R2) total += 1.0;
      continue;
    }
    for (std::size_t k = 0; k < loop.size(); ++k) {
      const Point& a = loop[k];
      const Point& b = loop[(k + 1) % loop.size()];
      const double dx = b[0] - a[0], dy = b[1] - a[1];
      const double len = std::hypot(dx, dy);
      if (len == 0) continue;
      // Clip the parameter range [0,1] to |a + t(b-a)| <= R.
      const double qa = dx * dx + dy * dy;
      const double qb = 2 * (a[0] * dx + a[1] * dy);
      const double qc = a[0] * a[0] + a[1] * a[1] - R2;
      const double disc = qb * qb - 4 * qa * qc;
      if (disc <= 0) {
        if (qc <= 0) total += len;  // fully inside (tangent case)
        continue;
      }
      const double sq = std::sqrt(disc);
      const double t0 = std::clamp((-qb - sq) / (2 * qa), 0.0, 1.0);
      const double t1 = std::clamp((-qb + sq) / (2 * qa), 0.0, 1.0);
      total += len * std::max(0.0, t1 - t0);
    }
  }
  return total;
}

double shoelace_area(const FrontSet& front) {
  double total = 0.0;
  for (const auto& loop : front.polylines) {
    if (loop.size() < 3) continue;
    double acc = 0.0;
    for (std::size_t k = 0; k < loop.size(); ++k) {
      const Point& a = loop[k];
      const Point& b = loop[(k + 1) % loop.size()];
      acc += a[0] * b[1] - b[0] * a[1];
    }
    total += 0.5 * acc;
  }
  return total;
}

double hausdorff_distance(const FrontSet& a, const FrontSet& b) {
  auto gather = [](const FrontSet& f) {
    std::vector<Point> pts;
    for (const auto& loop : f.polylines)
      for (const auto& p : loop) pts.push_back(p);
    return pts;
  };
  const std::vector<Point> pa = gather(a), pb = gather(b);
  require(!pa.empty() && !pb.empty(), Err::EmptyLevelSet, "empty front");
  auto one_sided = [](const std::vector<Point>& from, const std::vector<Point>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to)
        best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(pa, pb), one_sided(pb, pa));
}

ConeParams cone_parameters(double c_lo, double c_hi, double C, const Modulus& omega_t,
                           double r_interior) {
  require(c_lo > 0 && c_hi > 0 && C > 0 && r_interior > 0, Err::NonpositiveInput,
          "cone parameters need positive constants");
  double theta = std::min(c_lo * c_lo / (6.0 * C * c_hi), r_interior);
  const double w_inv = omega_t.inverse(c_lo / 4.0);
  if (std::isfinite(w_inv)) theta = std::min(theta, c_lo * w_inv);
  ConeParams p;
  p.theta = theta;
  p.rho = 0.5 * c_lo / c_hi * theta;
  return p;
}

bool cone_fits(const ScalarField& u, double level, Point x, Point nu,
               const ConeParams& params, double slack) {
  require(params.rho > 0 && params.rho < params.theta, Err::BadParams,
          "cone needs 0 < rho < theta");
  const Grid& g = u.grid;
  const double step = 0.5 * g.h;
  const int m = std::max(2, static_cast<int>(std::ceil(params.theta / step)));
  auto member = [&](double px, double py) {
    return u.interp(px, py) >= level - slack;
  };
  for (int j = 0; j <= m; ++j) {
    const double lam = params.theta * j / m;
    const double cx = x[0] + lam * nu[0];
    const double cy = x[1] + lam * nu[1];
    const double r = lam * params.rho / params.theta;
    if (g.dim == 1) {
      if (!member(cx - r, 0) || !member(cx + r, 0) || !member(cx, 0)) return false;
      continue;
    }
    if (!member(cx, cy)) return false;
    if (r < 1e-15) continue;
    // Interior lattice plus the bounding ring of the lambda-slice ball.
    const int q = static_cast<int>(std::floor(r / step));
    for (int wy = -q; wy <= q; ++wy)
      for (int wx = -q; wx <= q; ++wx) {
        const double ox = wx * step, oy = wy * step;
        if (ox * ox + oy * oy > r * r) continue;
        if (!member(cx + ox, cy + oy)) return false;
      }
    const int ring = std::max(8, static_cast<int>(std::ceil(2 * M_PI * r / step)));
    for (int a = 0; a < ring; ++a) {
      const double ang = 2 * M_PI * a / ring;
      if (!member(cx + r * std::cos(ang), cy + r * std::sin(ang))) return false;
    }
  }
  return true;
}

namespace {

Point inward_normal(const ScalarField& u, const Point& p) {
  const double h = u.grid.h;
  double gx = (u.interp(p[0] + h, p[1]) - u.interp(p[0] - h, p[1])) / (2 * h);
  double gy = u.grid.dim == 2
                  ? (u.interp(p[0], p[1] + h) - u.interp(p[0], p[1] - h)) / (2 * h)
                  : 0.0;
  const double n = std::hypot(gx, gy);
  if (n < 1e-14) return {1.0, 0.0};
  return {gx / n, gy / n};  // u decreases outward
}

}  // namespace

ConeCertificate cone_certificate(const ScalarField& u, const FrontSet& front,
                                 const ConeParams& params, int axis_count) {
  require(axis_count >= 8, Err::BadConfig, "need axis_count >= 8");
  const double slack = u.grid.h * max_grad_centered(u);
  ConeCertificate cert;
  std::size_t hits = 0, total = 0;
  for (const auto& loop : front.polylines)
    for (const auto& p : loop) {
      ++total;
      ConeSample sample;
      sample.vertex = p;
      const Point n_in = inward_normal(u, p);
      std::vector<Point> axes{n_in};
      for (int a = 0; a < axis_count; ++a) {
        const double ang = 2 * M_PI * a / axis_count;
        if (u.grid.dim == 1)
          axes.push_back({a % 2 == 0 ? 1.0 : -1.0, 0.0});
        else
          axes.push_back({std::cos(ang), std::sin(ang)});
      }
      for (const Point& nu : axes) {
        if (cone_fits(u, front.level, p, nu, params, slack)) {
          sample.fits = true;
          sample.axis = nu;
          break;
        }
      }
      hits += sample.fits;
      cert.samples.push_back(sample);
    }
  cert.coverage = total == 0 ? 0.0 : static_cast<double>(hits) / total;
  return cert;
}

double interior_ball_radius(const ScalarField& u0, const FrontSet& front) {
  const double h = u0.grid.h;
  double r = std::numeric_limits<double>::infinity();
  const double t_max = std::max(u0.max(), 0.0) + 2 * h;
  for (const auto& loop : front.polylines)
    for (const auto& p : loop) {
      const Point n_in = inward_normal(u0, p);
      double best = 0.0;
      // For a signed-distance profile, B(p + t n, t) lies inside iff the
      // center depth reaches t.
      for (double t = 0.5 * h; t <= t_max; t += 0.5 * h) {
        if (u0.interp(p[0] + t * n_in[0], p[1] + t * n_in[1]) >= t - 2 * h) best = t;
      }
      r = std::min(r, best);
    }
  return std::isfinite(r) ? r : 0.0;
}

EstimateReport perimeter_bound_check(const FrontSet& front, const ConeParams& params,
                                     double R, double lambda_hat, double coverage) {
  require(coverage >= 1.0, Err::CertificateMissing,
          "perimeter bound needs a full cone certificate");
  const ScalarField& ind = front.enclosed;
  const Grid& g = ind.grid;
  const double lhs = perimeter_in_ball(front, R);
  const double r_vol = R + 0.25 * params.rho;
  double vol = 0.0;
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i)
      if (ind.at(i, j) >= 0.5 && g.radius(i, j) <= r_vol) vol += g.cell_volume();
  EstimateReport rep;
  rep.name = "perimeter_bound";
  rep.add_row(ind.time, lhs, lambda_hat * vol);
  rep.stats["ratio"] = vol > 0 ? lhs / vol : std::numeric_limits<double>::infinity();
  rep.stats["volume"] = vol;
  return rep;
}

EstimateReport band_estimate_check(const Trajectory& traj, double a, double b,
                                   const GradientBand& band, double c_lo, double c_hi,
                                   double du0_inf, const ScalarField& u0, double tau) {
  require(a < b, Err::BadBand, "band estimate needs a < b");
  const double half_eta = 0.5 * band.eta;
  require(a >= -half_eta - 1e-12 && b <= half_eta + 1e-12, Err::BandOutsideEta,
          "band [a,b] must sit inside [-eta/2, eta/2]");
  require(!traj.times.empty() && traj.times.back() >= tau - 1e-12, Err::BadConfig,
          "trajectory does not reach tau");

  // lhs: trapezoid of the band occupancy up to tau (linear interpolation
  // of the occupancy at tau itself).
  double lhs = 0.0;
  double prev_t = 0.0, prev_m = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.times[k];
    const double m = band_measure(traj.slices[k], a, b);
    if (k > 0) {
      if (t <= tau + 1e-12) {
        lhs += 0.5 * (m + prev_m) * (t - prev_t);
      } else if (prev_t < tau) {
        const double lam = (tau - prev_t) / (t - prev_t);
        const double m_tau = (1 - lam) * prev_m + lam * m;
        lhs += 0.5 * (m_tau + prev_m) * (tau - prev_t);
        break;
      }
    }
    prev_t = t;
    prev_m = m;
  }

  const double rhs_raw = (b - a) / (band.eta_bar * c_lo) *
                         (superlevel_measure(u0, a - c_hi * du0_inf * tau) -
                          superlevel_measure(u0, b));
  const double h = u0.grid.h;
  EstimateReport rep;
  rep.name = "band_estimate";
  rep.add_row(tau, lhs, rhs_raw * (1 + 10 * h));
  rep.stats["rhs_raw"] = rhs_raw;
  rep.stats["eta_bar"] = band.eta_bar;
  return rep;
}

}  // namespace frontprop
