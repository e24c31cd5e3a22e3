#include "frontprop/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "frontprop/convolution.hpp"
#include "frontprop/fpf.hpp"
#include "frontprop/front_geometry.hpp"
#include "frontprop/green.hpp"
#include "frontprop/par.hpp"
#include "frontprop/reachability.hpp"

namespace frontprop {

namespace {

using nlohmann::json;

Scenario::Builtin parse_builtin(const json& j) {
  Scenario::Builtin b;
  b.name = j.at("builtin").get<std::string>();
  if (b.name == "constant") {
    b.value = j.at("value").get<double>();
  } else if (b.name == "affine_clamped") {
    b.a = j.at("a").get<double>();
    b.b = j.at("b").get<double>();
    b.lo = j.at("lo").get<double>();
    b.hi = j.at("hi").get<double>();
  } else {
    fail(Err::BadConfig, "unknown builtin '" + b.name + "'");
  }
  return b;
}

std::function<double(double)> make_scalar_fn(const Scenario::Builtin& b) {
  if (b.name == "constant") {
    const double v = b.value;
    return [v](double) { return v; };
  }
  return affine_clamped(b.a, b.b, b.lo, b.hi);
}

void builtin_range(const Scenario::Builtin& b, double* lo, double* hi, double* lip) {
  if (b.name == "constant") {
    *lo = *hi = b.value;
    *lip = 0.0;
  } else {
    *lo = b.lo;
    *hi = b.hi;
    *lip = std::abs(b.b);
  }
}

ScalarField make_shape(const Scenario& s, const Grid& g) {
  if (s.shape == "disk") {
    return ScalarField::from_function(g, [&](double x, double y) {
      return std::hypot(x - s.center[0], y - s.center[1]) <= s.radius ? 1.0 : 0.0;
    });
  }
  if (s.shape == "square") {
    return ScalarField::from_function(g, [&](double x, double y) {
      return std::max(std::abs(x - s.center[0]), std::abs(y - s.center[1])) <= s.half_side
                 ? 1.0
                 : 0.0;
    });
  }
  if (s.shape == "two_disks") {
    return ScalarField::from_function(g, [&](double x, double y) {
      const bool a = std::hypot(x - s.center[0], y - s.center[1]) <= s.radius;
      const bool b = std::hypot(x - s.center2[0], y - s.center2[1]) <= s.radius2;
      return a || b ? 1.0 : 0.0;
    });
  }
  fail(Err::BadConfig, "unknown shape '" + s.shape + "'");
}

class ConstantVelocity final : public VelocitySource {
 public:
  ConstantVelocity(Grid g, double value) : grid_(std::move(g)), value_(value) {}
  ScalarField at(double t) override { return ScalarField(grid_, value_, t); }
  VelocityBounds bounds() const override {
    return VelocityBounds{value_, value_, 1e-12, Modulus{}};
  }

 private:
  Grid grid_;
  double value_;
};

std::vector<double> even_record_times(double T, int count) {
  std::vector<double> times;
  const int n = std::max(2, count);
  for (int k = 0; k < n; ++k) times.push_back(T * k / (n - 1));
  return times;
}

}  // namespace

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Err::IoError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Err::BadConfig, std::string("JSON parse failure: ") + e.what());
  }
  try {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    const json& grid = j.at("grid");
    s.half_width = grid.at("half_width").get<double>();
    s.h = grid.at("h").get<double>();
    s.dim = grid.value("dim", 2);
    const json& datum = j.at("datum");
    s.shape = datum.at("shape").get<std::string>();
    s.radius = datum.value("radius", 1.0);
    s.half_side = datum.value("half_side", 1.0);
    if (datum.contains("center")) {
      s.center[0] = datum["center"][0].get<double>();
      s.center[1] = datum["center"][1].get<double>();
    }
    if (datum.contains("center2")) {
      s.center2[0] = datum["center2"][0].get<double>();
      s.center2[1] = datum["center2"][1].get<double>();
    }
    s.radius2 = datum.value("radius2", 0.0);
    s.floor_value = datum.value("floor", -1.0);
    const json& model = j.at("model");
    s.model_type = model.at("type").get<std::string>();
    if (s.model_type == "constant") {
      s.c_const = model.at("value").get<double>();
    } else if (s.model_type == "dislocation") {
      const json& k = model.at("kernel");
      if (k.contains("fpf")) {
        s.kernel_fpf = k["fpf"].get<std::string>();
      } else {
        require(k.at("builtin").get<std::string>() == "disk", Err::BadConfig,
                "only the disk kernel builtin exists");
        s.kernel_radius = k.at("radius").get<double>();
        s.kernel_scale = k.at("scale").get<double>();
      }
      if (model.at("c1").is_number())
        s.c1_const = model["c1"].get<double>();
      else
        s.c1_fpf = model["c1"].at("fpf").get<std::string>();
    } else if (s.model_type == "fn") {
      s.alpha = parse_builtin(model.at("alpha"));
      s.gplus = parse_builtin(model.at("gplus"));
      s.gminus = parse_builtin(model.at("gminus"));
      const json& v0 = model.at("v0");
      if (v0.contains("fpf")) {
        s.v0_fpf = v0["fpf"].get<std::string>();
      } else {
        s.v0_builtin = v0.at("builtin").get<std::string>();
        s.v0_s0 = v0.value("s0", 0.1);
        s.v0_amp = v0.value("amp", 1.0);
      }
    } else {
      fail(Err::BadConfig, "unknown model type '" + s.model_type + "'");
    }
    s.horizon = j.at("horizon").get<double>();
    s.cfl_safety = j.value("cfl_safety", 0.9);
    s.record_count = j.value("record_count", 11);
    if (j.contains("picard")) {
      const json& p = j["picard"];
      s.tol_chi = p.value("tol_chi", 1e-3);
      s.max_iter = p.value("max_iter", 30);
      s.picard_seed = p.value("seed", std::string("datum"));
      s.damping = p.value("damping", 1.0);
    }
    for (const json& c : j.value("checks", json::array())) {
      Scenario::Check check;
      check.name = c.at("name").get<std::string>();
      check.a = c.value("a", check.a);
      check.b = c.value("b", check.b);
      check.tau = c.value("tau", check.tau);
      check.delta = c.value("delta", check.delta);
      check.c2 = c.value("c2", check.c2);
      check.R = c.value("R", check.R);
      check.lambda_hat = c.value("lambda_hat", check.lambda_hat);
      check.lambda0 = c.value("lambda0", check.lambda0);
      check.axis_count = c.value("axis_count", check.axis_count);
      check.count = c.value("count", check.count);
      if (c.contains("r_samples")) check.r_samples = c["r_samples"].get<std::vector<double>>();
      if (c.contains("t_samples")) check.t_samples = c["t_samples"].get<std::vector<double>>();
      s.checks.push_back(check);
    }
    s.output = j.value("output", "out/" + s.name);
    return s;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(Err::BadConfig, std::string("bad scenario config: ") + e.what());
  }
}

static PhaseIndicator make_seed(const std::string& kind, const InitialDatum& datum,
                                double T) {
  if (kind == "zero") return PhaseIndicator::constant(datum.field.grid, 0.0, T);
  if (kind == "one") return PhaseIndicator::constant(datum.field.grid, 1.0, T);
  if (kind == "datum")
    return PhaseIndicator::single(indicator_of_superlevel(datum.field, 0.0), T);
  fail(Err::BadConfig, "unknown picard seed '" + kind + "'");
}

ScenarioRun execute_scenario(const Scenario& s, const RunOptions& opts) {
  if (opts.threads > 0) set_max_threads(opts.threads);
  ScenarioRun run;
  run.scenario = s;

  Grid grid = Grid::centered(s.half_width, s.h, s.dim);
  run.datum = build_truncated_sdf(make_shape(s, grid), s.floor_value);
  run.record_times = even_record_times(s.horizon, s.record_count);

  if (s.model_type == "constant") {
    require(s.c_const > 0, Err::BadConfig, "constant velocity must be positive");
    ConstantVelocity vel(grid, s.c_const);
    run.bounds = vel.bounds();
    EikonalProblem prob{run.datum, &vel, s.horizon, s.cfl_safety};
    SolveOutput out = solve(prob, run.record_times);
    run.traj = std::move(out.traj);
    run.vel = std::move(out.vel);
    return run;
  }

  run.nonlocal = true;
  if (s.model_type == "dislocation") {
    DislocationModel model;
    model.kernel = s.kernel_fpf.empty()
                       ? disk_kernel(s.kernel_radius, s.kernel_scale, s.h, s.dim)
                       : read_fpf(s.kernel_fpf);
    model.c1 = s.c1_fpf.empty() ? ScalarField(grid, s.c1_const) : read_fpf(s.c1_fpf);
    require(model.c1.grid.same_as(grid), Err::BadConfig, "c1 grid mismatch");
    model.r_work = run.datum.R0;  // refined below once c_hi is known
    EstimateReport h3 = validate_h3(model);
    model.r_work = run.datum.R0 + model.derived.c_hi * s.horizon;
    h3 = validate_h3(model);
    run.reports.push_back(h3);
    run.dislocation = model;
    run.law = std::make_shared<DislocationLaw>(model);
  } else if (s.model_type == "fn") {
    FnModel model;
    model.alpha = make_scalar_fn(s.alpha);
    model.gplus = make_scalar_fn(s.gplus);
    model.gminus = make_scalar_fn(s.gminus);
    builtin_range(s.alpha, &model.c_lo, &model.c_hi, &model.lip_alpha);
    double gp_lo, gp_hi, gp_lip, gm_lo, gm_hi, gm_lip;
    builtin_range(s.gplus, &gp_lo, &gp_hi, &gp_lip);
    builtin_range(s.gminus, &gm_lo, &gm_hi, &gm_lip);
    model.g_lo = std::min(gm_lo, gp_lo);
    model.g_hi = std::max(gm_hi, gp_hi);
    model.lip_g = std::max(gp_lip, gm_lip);
    if (!s.v0_fpf.empty()) {
      model.v0 = read_fpf(s.v0_fpf);
      require(model.v0.grid.same_as(grid), Err::BadConfig, "v0 grid mismatch");
    } else if (s.v0_builtin == "zero") {
      model.v0 = ScalarField(grid, 0.0);
    } else if (s.v0_builtin == "gaussian") {
      const double s0 = s.v0_s0, amp = s.v0_amp;
      const int dim = s.dim;
      model.v0 = ScalarField::from_function(grid, [=](double x, double y) {
        return amp * heat_kernel(x * x + y * y, s0, dim);
      });
    } else {
      fail(Err::BadConfig, "unknown v0 builtin '" + s.v0_builtin + "'");
    }
    model.dv0_inf = lipschitz_discrete(model.v0);
    model.horizon = s.horizon;
    const double v_reach =
        std::max(std::abs(model.v0.min()), std::abs(model.v0.max())) +
        model.gamma() * s.horizon + 1.0;
    fn_spot_check(model, -v_reach, v_reach);
    // Heat walls must sit in the Gaussian tail: pad by 4 sqrt(T) past the
    // front containment ball.
    require(run.datum.front_radius + model.c_hi * s.horizon + 4.0 * std::sqrt(s.horizon) <=
                grid.inscribed_radius() + 1e-9,
            Err::DomainTooSmall, "fn model needs 4*sqrt(T) heat padding");
    run.fn = model;
    run.law = std::make_shared<FnLaw>(model);
  } else {
    fail(Err::BadConfig, "unknown model type");
  }

  run.bounds = run.law->bounds();
  WeakSolveConfig cfg;
  cfg.datum = run.datum;
  cfg.horizon = s.horizon;
  cfg.tol_chi = s.tol_chi;
  cfg.max_iter = s.max_iter;
  cfg.cfl_safety = s.cfl_safety;
  cfg.damping = s.damping;
  cfg.record_times = run.record_times;
  run.weak = picard_solve(cfg, *run.law, make_seed(s.picard_seed, run.datum, s.horizon));
  require(run.weak.converged, Err::NoConvergence, "picard iteration did not converge");
  run.traj = run.weak.traj;
  run.vel = run.weak.vel;

  EstimateReport conv;
  conv.name = "picard_convergence";
  conv.add_row(s.horizon, run.weak.residual, s.tol_chi, run.weak.converged);
  conv.stats["iterations"] = run.weak.iterations;
  conv.stats["sandwich_violation"] = run.weak.sandwich_violation;
  run.reports.push_back(conv);
  return run;
}

void run_checks(ScenarioRun& run, const RunOptions& opts) {
  const Scenario& s = run.scenario;
  const InitialDatum& datum = run.datum;
  const Grid& grid = datum.field.grid;

  for (const Scenario::Check& check : s.checks) {
    if (check.name == "finite_speed") {
      run.reports.push_back(finite_speed_check(run.traj, datum.R0, run.bounds.c_hi));
    } else if (check.name == "lipschitz_bound") {
      run.reports.push_back(check_lipschitz_bound(run.traj, run.bounds.lip_x, datum.du0_inf));
    } else if (check.name == "gradient_band") {
      GradientBand band = gradient_band(run.traj);
      EstimateReport rep;
      rep.name = "gradient_band";
      rep.add_row(s.horizon, std::sqrt(2 * band.eta) * std::exp(-band.gamma_hat * s.horizon / 2),
                  band.eta_bar, band.eta_bar > 0);
      rep.stats["eta"] = band.eta;
      rep.stats["eta_bar"] = band.eta_bar;
      rep.stats["gamma_hat"] = band.gamma_hat;
      run.reports.push_back(rep);
    } else if (check.name == "band_estimate") {
      GradientBand band = gradient_band(run.traj);
      run.reports.push_back(band_estimate_check(run.traj, check.a, check.b, band,
                                                run.bounds.c_lo, run.bounds.c_hi,
                                                datum.du0_inf, datum.field, check.tau));
    } else if (check.name == "increase_principle") {
      run.reports.push_back(increase_principle_check(datum.field, datum.eta0, check.delta));
    } else if (check.name == "h2_certificate") {
      EstimateReport rep;
      rep.name = "h2_certificate";
      rep.add_row(0.0, h2_violation(datum.field, datum.eta0), 1e-9);
      rep.stats["eta0"] = datum.eta0;
      rep.stats["kink_cells"] = datum.cert.kink_cells;
      run.reports.push_back(rep);
    } else if (check.name == "classicality") {
      require(run.nonlocal, Err::BadConfig, "classicality check needs a weak solution");
      run.reports.push_back(classicality_check(run.weak));
    } else if (check.name == "cone_certificate") {
      const FrontSet f0 = extract_front(datum.field, 0.0);
      const double r_int = interior_ball_radius(datum.field, f0);
      ConeParams params =
          cone_parameters(run.bounds.c_lo, run.bounds.c_hi,
                          std::max(run.bounds.lip_x, 1e-9), run.bounds.omega_t, r_int);
      const double scale = 1.0 - 4.0 * grid.h / params.theta;
      ConeParams tested = params;
      if (scale > 0) {
        tested.rho *= scale;
        tested.theta *= scale;
      }
      EstimateReport rep;
      rep.name = "cone_certificate";
      for (std::size_t k = 0; k < run.traj.size(); ++k) {
        const FrontSet f = extract_front(run.traj.slices[k], 0.0);
        ConeCertificate cert =
            cone_certificate(run.traj.slices[k], f, tested, check.axis_count);
        rep.add_row(run.traj.times[k], 1.0, cert.coverage, cert.coverage >= 1.0);
      }
      rep.stats["theta"] = params.theta;
      rep.stats["rho"] = params.rho;
      rep.stats["scale"] = scale;
      rep.stats["r_interior"] = r_int;
      run.reports.push_back(rep);
    } else if (check.name == "perimeter_bound") {
      ConeParams params{0.125, 0.5};
      EstimateReport rep;
      rep.name = "perimeter_bound";
      for (std::size_t k = 0; k < run.traj.size(); ++k) {
        const FrontSet f = extract_front(run.traj.slices[k], 0.0);
        ConeCertificate cert = cone_certificate(run.traj.slices[k], f, params, 16);
        EstimateReport one =
            perimeter_bound_check(f, params, check.R, check.lambda_hat, cert.coverage);
        rep.add_row(run.traj.times[k], one.rows[0].lhs, one.rows[0].rhs);
        rep.stats["ratio_t" + std::to_string(k)] = one.stats["ratio"];
      }
      run.reports.push_back(rep);
    } else if (check.name == "minimal_time") {
      MinimalTimeField mt = minimal_time(run.traj);
      run.reports.push_back(lipschitz_check(mt, run.bounds.c_lo));
      run.reports.push_back(duality_check(mt, run.traj));
    } else if (check.name == "difference_bound") {
      require(s.model_type == "constant", Err::BadConfig,
              "difference_bound runs on constant models");
      Scenario s2 = s;
      s2.c_const = check.c2;
      s2.checks.clear();
      ScenarioRun other = execute_scenario(s2, opts);
      run.reports.push_back(difference_bound_check(run.traj, other.traj, run.vel, other.vel,
                                                   run.bounds.lip_x, datum.du0_inf));
    } else if (check.name == "fn_regularity") {
      require(s.model_type == "fn", Err::BadConfig, "fn_regularity needs the fn model");
      const double dt = cfl_dt(grid, run.bounds.c_hi, s.cfl_safety);
      std::vector<HeatState> states = march_heat(run.fn, run.weak.chi, run.record_times, dt);
      run.reports.push_back(regularity_report(states, run.fn));
    } else if (check.name == "uniqueness") {
      require(run.nonlocal, Err::BadConfig, "uniqueness check needs a nonlocal model");
      WeakSolveConfig cfg;
      cfg.datum = datum;
      cfg.horizon = s.horizon;
      cfg.tol_chi = s.tol_chi;
      cfg.max_iter = s.max_iter;
      cfg.cfl_safety = s.cfl_safety;
      cfg.damping = s.damping;
      cfg.record_times = run.record_times;
      UniquenessResult uq = uniqueness_experiment(
          cfg, *run.law, make_seed("zero", datum, s.horizon), make_seed("one", datum, s.horizon));
      run.reports.push_back(uq.report);
      GradientBand band = gradient_band(uq.a.traj);
      ContractionInputs in;
      in.c_lo = run.bounds.c_lo;
      in.c_hi = run.bounds.c_hi;
      in.lip_x = run.bounds.lip_x;
      in.du0_inf = datum.du0_inf;
      in.eta_bar = band.eta_bar;
      in.horizon = s.horizon;
      EstimateReport contraction;
      contraction_diagnostics(uq.a, uq.b, datum, check.tau, in, &contraction);
      run.reports.push_back(contraction);
    } else if (check.name == "pontryagin") {
      SmoothedSliceVelocity vel(run.vel, run.bounds);
      const FrontSet front = extract_front(run.traj.slices.back(), 0.0);
      const double M = 3.0 * std::max(run.bounds.lip_x, 1e-9) * run.bounds.c_hi;
      EstimateReport track, taylor, adjoint;
      track.name = "boundary_tracking";
      taylor.name = "taylor_deviation";
      adjoint.name = "adjoint_growth";
      const auto& loop = front.polylines.at(0);
      const std::size_t stride = std::max<std::size_t>(1, loop.size() / check.count);
      for (std::size_t q = 0; q < loop.size(); q += stride) {
        const Point& p = loop[q];
        const double h = grid.h;
        const ScalarField& uT = run.traj.slices.back();
        const double gx = (uT.interp(p[0] + h, p[1]) - uT.interp(p[0] - h, p[1])) / (2 * h);
        const double gy = (uT.interp(p[0], p[1] + h) - uT.interp(p[0], p[1] - h)) / (2 * h);
        const double gn = std::hypot(gx, gy);
        if (gn < 1e-12) continue;
        ExtremalTrajectory ext = pontryagin_integrate(
            {p[0], p[1]}, {-gx / gn, -gy / gn}, vel, s.horizon, grid.h / 4.0);
        for (const auto& row : boundary_tracking_check(ext, run.traj, 3 * grid.h).rows)
          track.add_row(row.time, row.lhs, row.rhs, row.pass);
        for (const auto& row : taylor_deviation_check(ext, M, run.bounds.omega_t).rows)
          taylor.add_row(row.time, row.lhs, row.rhs, row.pass);
        for (const auto& row : adjoint_growth_check(ext, run.bounds.lip_x).rows)
          adjoint.add_row(row.time, row.lhs, row.rhs, row.pass);
      }
      run.reports.push_back(track);
      run.reports.push_back(taylor);
      run.reports.push_back(adjoint);
    } else if (check.name == "green_lipschitz") {
      require(run.nonlocal, Err::BadConfig, "green check needs recorded occupancies");
      PhaseIndicator frames;
      frames.grid = grid;
      for (std::size_t k = 0; k < run.traj.size(); ++k) {
        frames.times.push_back(run.traj.times[k] == 0 ? 0.0 : run.traj.times[k]);
        std::vector<float> f(grid.size());
        for (std::size_t c = 0; c < f.size(); ++c)
          f[c] = run.traj.slices[k].v[c] >= 0 ? 1.0f : 0.0f;
        frames.frames.push_back(std::move(f));
      }
      ConeParams params{0.125, 0.5};
      const FrontSet fT = extract_front(run.traj.slices.back(), 0.0);
      ConeCertificate cert = cone_certificate(run.traj.slices.back(), fT, params, 16);
      PhiEvaluator phi(frames);
      std::vector<std::array<double, 2>> xs{{0.0, 0.0}, {datum.R0, 0.0}};
      run.reports.push_back(lipschitz_in_r_check(phi, cert.coverage, xs, check.t_samples,
                                                 check.r_samples, check.lambda0));
    } else {
      fail(Err::BadConfig, "unknown check '" + check.name + "'");
    }
  }
  for (const auto& rep : run.reports) run.all_pass = run.all_pass && rep.pass;
}

void write_artifacts(const ScenarioRun& run, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "traj");

  char name[64];
  std::ofstream index(fs::path(out_dir) / "traj" / "index.csv");
  index << "k,time,u_file,c_file\n";
  for (std::size_t k = 0; k < run.traj.size(); ++k) {
    std::snprintf(name, sizeof name, "u_%03zu.fpf", k);
    const std::string upath = (fs::path(out_dir) / "traj" / name).string();
    write_fpf(upath, run.traj.slices[k]);
    std::string uname = name;
    std::snprintf(name, sizeof name, "c_%03zu.fpf", k);
    write_fpf((fs::path(out_dir) / "traj" / name).string(), run.vel.slices[k]);
    index << k << "," << format_double(run.traj.times[k]) << "," << uname << "," << name
          << "\n";
  }
  MinimalTimeField mt = minimal_time(run.traj);
  FpfMeta meta;
  meta.sentinel = kNeverReached;
  write_fpf((fs::path(out_dir) / "minimal_time.fpf").string(), mt.v, meta);

  std::ofstream reports(fs::path(out_dir) / "reports.csv");
  write_csv_header(reports);
  for (const auto& rep : run.reports) append_csv(reports, run.scenario.name, rep);
  std::ofstream summary(fs::path(out_dir) / "summary.csv");
  summary << "check,pass\n";
  for (const auto& rep : run.reports) summary << rep.name << "," << (rep.pass ? 1 : 0) << "\n";
}

namespace {

std::string resolve_out_dir(const Scenario& s, const RunOptions& opts) {
  if (!opts.out_override.empty()) return opts.out_override;
  if (const char* env = std::getenv("FRONTPROP_OUT")) return std::string(env) + "/" + s.name;
  return s.output;
}

}  // namespace

int run_scenario_file(const std::string& path, const RunOptions& opts) {
  Scenario s;
  try {
    s = parse_scenario_file(path);
  } catch (const Error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  ScenarioRun run;
  try {
    run = execute_scenario(s, opts);
  } catch (const Error& e) {
    switch (e.code()) {
      case Err::CflViolation:
      case Err::SolverDivergence:
      case Err::StepFailure:
      case Err::NoConvergence:
        std::cerr << "solver abort: " << e.what() << "\n";
        return 5;
      default:
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    }
  }
  try {
    run_checks(run, opts);
  } catch (const Error& e) {
    std::cerr << "check aborted: " << e.what() << "\n";
    return 5;
  }
  write_artifacts(run, resolve_out_dir(s, opts));
  for (const auto& rep : run.reports)
    std::cout << s.name << " " << rep.name << " " << (rep.pass ? "pass" : "FAIL") << "\n";
  return run.all_pass ? 0 : 4;
}

int verify_suite_file(const std::string& path, const RunOptions& opts) {
  std::ifstream in(path);
  if (!in.good()) {
    std::cerr << "parse error: cannot open " << path << "\n";
    return 2;
  }
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  if (!j.contains("scenarios") || !j["scenarios"].is_array()) {
    std::cerr << "parse error: suite needs a 'scenarios' array\n";
    return 2;
  }
  const auto base = std::filesystem::path(path).parent_path();
  int worst = 0;
  std::ostringstream aggregate;
  write_csv_header(aggregate);
  for (const auto& entry : j["scenarios"]) {
    const std::string spath = (base / entry.get<std::string>()).string();
    Scenario s;
    try {
      s = parse_scenario_file(spath);
    } catch (const Error& e) {
      std::cerr << "parse error: " << e.what() << "\n";
      return 2;
    }
    ScenarioRun run;
    try {
      run = execute_scenario(s, opts);
      run_checks(run, opts);
    } catch (const Error& e) {
      std::cerr << s.name << " aborted: " << e.what() << "\n";
      worst = std::max(worst, 5);
      continue;
    }
    write_artifacts(run, resolve_out_dir(s, opts));
    for (const auto& rep : run.reports) append_csv(aggregate, s.name, rep);
    for (const auto& rep : run.reports)
      std::cout << s.name << " " << rep.name << " " << (rep.pass ? "pass" : "FAIL") << "\n";
    if (!run.all_pass) worst = std::max(worst, 4);
  }
  std::filesystem::path agg_dir = ".";
  if (!opts.out_override.empty()) agg_dir = opts.out_override;
  else if (const char* env = std::getenv("FRONTPROP_OUT")) agg_dir = env;
  std::filesystem::create_directories(agg_dir);
  std::ofstream agg_file(agg_dir / "suite_summary.csv");
  agg_file << aggregate.str();
  return worst;
}

}  // namespace frontprop
