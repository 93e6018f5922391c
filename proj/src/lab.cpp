#include "choq/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <stdexcept>

#include "choq/kernels.hpp"
#include "choq/reference.hpp"
#include "choq/riesz.hpp"

namespace choq {

namespace {

Field abs_pow_field(const Field& u, double p) {
  Field out(u.grid());
  kernels::abs_pow(u.values(), p, out.values());
  return out;
}

double max_abs_field(const Field& u) { return kernels::max_abs(u.values()); }

// uniform in [0, 1), identical across standard libraries
double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

FourierBoundRecord check_fourier_bound(const Field& f, const Field& g, double alpha,
                                       double beta, double s) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("check_fourier_bound: grid mismatch");
  const double n = f.grid().dimension;
  if (!(alpha > 0.0 && alpha <= beta && beta < n))
    throw std::invalid_argument("check_fourier_bound: need 0 < alpha <= beta < N");
  if (!(s > 0.0 && s < n)) throw std::invalid_argument("check_fourier_bound: need s in (0, N)");

  FourierBoundRecord rec;
  rec.alpha = alpha;
  rec.beta = beta;
  rec.s = s;
  const auto kernel_alpha = RieszKernelSpec::make(f.grid().dimension, alpha, true);
  const auto kernel_beta = RieszKernelSpec::make(f.grid().dimension, beta, true);
  rec.lhs = std::abs(cross_riesz_energy(f, g, kernel_alpha) - inner_l2(f, g));
  const double smooth_part = norm_l2(riesz_convolve(f, kernel_beta));
  const double rough_part = sobolev_seminorm(f, s);
  rec.rhs = (alpha / beta * smooth_part + alpha / s * rough_part) * norm_l2(g);
  rec.holds = rec.lhs <= rec.rhs * (1.0 + 1e-6);
  return rec;
}

RieszErrorRecord check_riesz_energy_error(const Field& u, double p, double alpha) {
  const auto kernel = RieszKernelSpec::make(u.grid().dimension, alpha, true);
  RieszErrorRecord rec;
  rec.alpha = alpha;
  const double local = integrate(abs_pow_field(u, 2.0 * p));
  rec.error = std::abs(local - riesz_energy(u, p, kernel));
  const double h1 = h1_inner(u, u);
  rec.bound_ratio = h1 > 0.0 ? rec.error / (alpha * std::pow(h1, p)) : 0.0;
  return rec;
}

std::vector<OscillationRecord> check_oscillation_degradation(
    const Field& psi, const std::vector<int>& frequencies,
    const std::function<double(int)>& alpha_rule) {
  std::vector<OscillationRecord> records;
  records.reserve(frequencies.size());
  for (int n : frequencies) {
    if (n < 0) throw std::invalid_argument("check_oscillation_degradation: negative frequency");
    // an aliased carrier would silently fold to a low frequency and measure
    // the wrong symbol gap
    if (2.0 * n * psi.grid().spacing() >= 1.0)
      throw std::invalid_argument(
          "check_oscillation_degradation: carrier at or above the grid Nyquist frequency");
    OscillationRecord rec;
    rec.frequency = n;
    rec.alpha = alpha_rule(n);
    if (!(rec.alpha > 0.0 && rec.alpha < psi.grid().dimension))
      throw std::invalid_argument("check_oscillation_degradation: alpha rule out of range");
    const Field carrier = sample(psi.grid(), [n](const std::array<double, 3>& x) {
      return std::cos(2.0 * std::numbers::pi * n * x[0]);
    });
    const Field f = multiply(psi, carrier);
    const auto kernel = RieszKernelSpec::make(psi.grid().dimension, rec.alpha, true);
    rec.mass = inner_l2(f, f);
    rec.error = cross_riesz_energy(f, f, kernel) - rec.mass;
    records.push_back(rec);
  }
  return records;
}

UpperBoundSummary check_upper_bound_alphaN(const Field& f, const std::vector<double>& alpha_list,
                                           double r) {
  if (!(r > 1.0)) throw std::invalid_argument("check_upper_bound_alphaN: need r > 1");
  if (kernels::min_value(f.values()) < 0.0)
    throw std::invalid_argument("check_upper_bound_alphaN: f must be nonnegative");
  const double n = f.grid().dimension;
  UpperBoundSummary summary;
  const double mass = integrate(f);
  for (double alpha : alpha_list) {
    if (!(alpha > n / r && alpha < n))
      throw std::invalid_argument("check_upper_bound_alphaN: need alpha in (N/r, N)");
    const auto kernel = RieszKernelSpec::make(f.grid().dimension, alpha, false);
    const Field conv = riesz_convolve(f, kernel);
    UpperBoundRecord rec;
    rec.alpha = alpha;
    rec.deficit = kernels::max_value(conv.values()) - mass;
    rec.envelope = (n - alpha) / std::pow(r * alpha - n, 1.0 - 1.0 / r);
    rec.ratio = rec.deficit / rec.envelope;
    summary.records.push_back(rec);
  }
  // least-squares slope of log(deficit) against log(N - alpha)
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (const auto& rec : summary.records) {
    if (rec.deficit <= 0.0) continue;
    const double x = std::log(n - rec.alpha);
    const double y = std::log(rec.deficit);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2 && sxx * m - sx * sx > 0.0)
    summary.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  if (!summary.records.empty()) {
    auto [lo, hi] = std::minmax_element(
        summary.records.begin(), summary.records.end(),
        [](const UpperBoundRecord& a, const UpperBoundRecord& b) { return a.ratio < b.ratio; });
    summary.ratio_min = lo->ratio;
    summary.ratio_max = hi->ratio;
  }
  return summary;
}

std::vector<TranslatedLimitRecord> check_translated_limit(
    const Field& f, const Field& g, const std::vector<double>& alpha_list,
    const std::function<double(double)>& separation_rule) {
  if (kernels::min_value(f.values()) < 0.0 || kernels::min_value(g.values()) < 0.0)
    throw std::invalid_argument("check_translated_limit: f and g must be nonnegative");
  const double n = f.grid().dimension;
  const double mass_f = integrate(f);
  const double mass_g = integrate(g);
  std::vector<TranslatedLimitRecord> records;
  records.reserve(alpha_list.size());
  for (double alpha : alpha_list) {
    TranslatedLimitRecord rec;
    rec.alpha = alpha;
    rec.separation = separation_rule(alpha);
    if (!(rec.separation >= 0.0) || !std::isfinite(rec.separation))
      throw std::invalid_argument("check_translated_limit: separation rule out of range");
    const auto kernel = RieszKernelSpec::make(f.grid().dimension, alpha, false);
    std::vector<double> offset(static_cast<std::size_t>(f.grid().dimension), 0.0);
    offset[0] = rec.separation;
    rec.pairing = cross_riesz_energy_offset(f, g, kernel, offset);
    const double rho = std::pow(1.0 + rec.separation, alpha - n);
    rec.target = rho * mass_f * mass_g;
    rec.gap = std::abs(rec.pairing - rec.target) / (rec.target > 0.0 ? rec.target : 1.0);
    records.push_back(rec);
  }
  return records;
}

// --- sweeps ------------------------------------------------------------------

SweepConfig SweepConfig::alpha0_default() {
  SweepConfig config;
  config.mode = Mode::alpha0;
  config.alpha_list = {0.4, 0.2, 0.1, 0.05};
  config.dimension = 1;
  config.p = 2.0;
  config.grid = GridSpec::make(1, 30.0, 1024);
  config.solver.max_iterations = 20000;
  return config;
}

SweepConfig SweepConfig::alphaN_default() {
  SweepConfig config;
  config.mode = Mode::alphaN;
  config.alpha_list = {0.7, 0.85, 0.95, 0.98};
  config.dimension = 1;
  config.p = 3.0;
  config.grid = GridSpec::make(1, 30.0, 1024);
  config.solver.max_iterations = 20000;
  return config;
}

void SweepConfig::validate() const {
  if (alpha_list.empty()) throw std::invalid_argument("sweep: empty alpha list");
  for (double alpha : alpha_list)
    if (!(alpha > 0.0 && alpha < dimension))
      throw std::invalid_argument("sweep: alpha outside (0, N)");
  const bool toward_zero = mode == Mode::alpha0;
  for (std::size_t i = 1; i < alpha_list.size(); ++i) {
    const bool ok = toward_zero ? alpha_list[i] < alpha_list[i - 1]
                                : alpha_list[i] > alpha_list[i - 1];
    if (!ok) throw std::invalid_argument("sweep: alpha list must be monotone toward the endpoint");
  }
  if (mode == Mode::alphaN && !(p > 2.0))
    throw std::invalid_argument("sweep: the alphaN regime requires p > 2");
  if (!(p >= 2.0)) throw std::invalid_argument("sweep: p must be >= 2");
  if (grid.dimension != dimension) throw std::invalid_argument("sweep: grid dimension mismatch");
}

namespace {

double nehari_scale_nls(const Field& u, double q) {
  const double h1 = h1_inner(u, u);
  const double lq = integrate(abs_pow_field(u, q));
  if (!(lq > 0.0)) throw std::invalid_argument("nehari_scale_nls: vanishing field");
  return std::pow(h1 / lq, 1.0 / (q - 2.0));
}

GridSpec doubled(const GridSpec& grid) {
  return GridSpec::make(grid.dimension, 2.0 * grid.half_length, 2 * grid.points_per_axis);
}

struct InitJitter {
  double offset_plus = 0.0;
  double offset_minus = 0.0;
  double amplitude = 0.0;  // relative imbalance of the two bumps
};

Field two_bump_init(const Field& profile, double half_separation, const InitJitter& jitter) {
  const GridSpec& grid = profile.grid();
  std::vector<double> shift(static_cast<std::size_t>(grid.dimension), 0.0);
  shift[0] = -half_separation + jitter.offset_plus;
  Field init = (1.0 + jitter.amplitude) * translate(profile, shift);
  shift[0] = half_separation + jitter.offset_minus;
  axpy_in_place(-(1.0 - jitter.amplitude), translate(profile, shift), init);
  return init;
}

SolveSummary summarize(const SolveResult& result) {
  SolveSummary summary;
  summary.converged = true;
  summary.energy = result.energy;
  summary.residual_h1 = result.residual_h1;
  summary.iterations = result.iterations;
  summary.boundary_mass = result.boundary_mass;
  summary.nehari_defects = result.nehari_defects;
  return summary;
}

ExperimentReport run_sweep(const SweepConfig& config) {
  config.validate();
  const bool toward_zero = config.mode == SweepConfig::Mode::alpha0;
  const int dim = config.dimension;
  const double p = config.p;

  ExperimentReport report;
  report.mode = toward_zero ? "alpha0" : "alphaN";
  report.dimension = dim;
  report.p = p;
  report.seed = config.solver.seed;
  report.initial_grid = config.grid;
  report.solver = config.solver;

  const double target_gst = toward_zero ? gamma_level(dim, 2.0 * p, config.grid)
                                        : kappa_level(dim, p, 1.0, config.grid);
  const double target_nod = toward_zero ? 2.0 * target_gst
                                        : 2.0 * kappa_level(dim, p, 2.0, config.grid);

  if (!config.output_directory.empty())
    std::filesystem::create_directories(config.output_directory);

  std::mt19937_64 rng(config.solver.seed);
  GridSpec grid = config.grid;  // enlarged grids are kept for later alphas

  for (std::size_t i = 0; i < config.alpha_list.size(); ++i) {
    const double alpha = config.alpha_list[i];
    // fresh seeded offsets per run to expose basin sensitivity
    InitJitter jitter;
    jitter.offset_plus = uniform01(rng) - 0.5;
    jitter.offset_minus = uniform01(rng) - 0.5;
    jitter.amplitude = 0.1 * uniform01(rng);

    AlphaRecord rec;
    rec.alpha = alpha;
    rec.gamma_or_kappa_target = target_gst;
    rec.nodal_target = target_nod;

    for (int doubling = 0;; ++doubling) {
      rec = AlphaRecord{};  // reset measurements from a discarded smaller box
      rec.alpha = alpha;
      rec.gamma_or_kappa_target = target_gst;
      rec.nodal_target = target_nod;
      rec.box.half_length = grid.half_length;
      rec.box.points_per_axis = grid.points_per_axis;
      rec.box.doublings = doubling;

      const auto params = ChoquardParams::make(dim, p, alpha, toward_zero);
      const Field bump = toward_zero ? nls_groundstate(dim, 2.0 * p, grid)
                                     : limit_groundstate_V(dim, p, 2.0, grid);
      const Field gst_init = toward_zero ? bump : limit_groundstate_V(dim, p, 1.0, grid);

      Field gst_field, nod_field;
      try {
        SolveResult gst = solve_groundstate(params, gst_init, config.solver);
        rec.gst = summarize(gst);
        rec.c_gst = gst.energy;
        rec.gst_gap = std::abs(gst.energy - target_gst);
        gst_field = std::move(gst.field);
      } catch (const std::exception& e) {
        rec.gst.error = e.what();
      }
      try {
        SolveResult nod = solve_nodal(params, two_bump_init(bump, 4.0, jitter), config.solver);
        rec.nod = summarize(nod);
        rec.c_nod = nod.energy;
        rec.nod_gap = std::abs(nod.energy - target_nod);
        nod_field = std::move(nod.field);
      } catch (const std::exception& e) {
        rec.nod.error = e.what();
      }

      if (rec.nod.converged) {
        try {
          const BumpFit fit = fit_two_bumps(nod_field, bump);
          rec.nodal.separation = fit.separation;
          rec.nodal.separation_pow_nmalpha = std::pow(fit.separation, dim - alpha);
          rec.nodal.fit_error = fit.fit_error_h1;
          rec.nodal.xi_plus = fit.xi_plus;
          rec.nodal.xi_minus = fit.xi_minus;
          rec.nodal.symmetry_defect = symmetry_defect(nod_field);
          const Field up = positive_part(nod_field);
          const Field um = negative_part(nod_field);
          rec.nodal.t_scale = toward_zero ? nehari_scale_nls(up, 2.0 * p)
                                          : nehari_scale_psi(up, p, 2.0);
          rec.nodal.s_scale = toward_zero ? nehari_scale_nls(um, 2.0 * p)
                                          : nehari_scale_psi(um, p, 2.0);
        } catch (const std::exception& e) {
          rec.nod.error = std::string("geometry: ") + e.what();
        }
      }

      if (rec.gst.converged) {
        const Field fp = abs_pow_field(gst_field, p);
        if (toward_zero) {
          rec.fourier_checks.push_back(
              check_fourier_bound(fp, fp, alpha, std::max(0.5 * dim, alpha), 0.5 * dim));
          rec.riesz_checks.push_back(check_riesz_energy_error(gst_field, p, alpha));
        } else if (alpha > 0.5 * dim) {
          rec.upper_checks.push_back(check_upper_bound_alphaN(fp, {alpha}, 2.0).records[0]);
        }
      }

      // box guards: solution mass on the boundary shell, or bumps running
      // out of room relative to the half box
      bool violated = false;
      if (rec.gst.converged)
        violated |= rec.gst.boundary_mass > 1e-8 * max_abs_field(gst_field);
      if (rec.nod.converged) {
        violated |= rec.nod.boundary_mass > 1e-8 * max_abs_field(nod_field);
        violated |= rec.nodal.separation > grid.half_length / 2.0;
      }
      if (violated && doubling < 2) {
        grid = doubled(grid);
        continue;
      }
      rec.box.saturated = violated;

      if (!config.output_directory.empty()) {
        char name[32];
        if (rec.gst.converged) {
          std::snprintf(name, sizeof name, "gst_%03zu.chqf", i);
          rec.gst_field_file = name;
          write_chqf(config.output_directory + "/" + name, gst_field);
        }
        if (rec.nod.converged) {
          std::snprintf(name, sizeof name, "nod_%03zu.chqf", i);
          rec.nod_field_file = name;
          write_chqf(config.output_directory + "/" + name, nod_field);
        }
      }
      break;
    }
    report.records.push_back(std::move(rec));
  }

  std::vector<double> ts, gst_levels, nod_levels;
  for (const auto& rec : report.records) {
    if (!rec.gst.converged || !rec.nod.converged) continue;
    ts.push_back(toward_zero ? rec.alpha : dim - rec.alpha);
    gst_levels.push_back(rec.c_gst);
    nod_levels.push_back(rec.c_nod);
  }
  report.gst_extrapolation = fit_power_law(ts, gst_levels, target_gst);
  report.nod_extrapolation = fit_power_law(ts, nod_levels, target_nod);
  return report;
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<double>& t, const std::vector<double>& levels,
                          double target) {
  PowerLawFit fit;
  if (t.size() != levels.size()) throw std::invalid_argument("fit_power_law: length mismatch");

  // three-point extrapolation c(t) = level + coefficient t^exponent on the
  // last three points (closest to the endpoint)
  if (t.size() >= 3) {
    const std::size_t n = t.size();
    const double t1 = t[n - 3], t2 = t[n - 2], t3 = t[n - 1];
    const double c1 = levels[n - 3], c2 = levels[n - 2], c3 = levels[n - 1];
    if (t1 > t2 && t2 > t3 && t3 > 0.0 && c2 != c3) {
      const double ratio = (c1 - c2) / (c2 - c3);
      auto mismatch = [&](double e) {
        return (std::pow(t1, e) - std::pow(t2, e)) / (std::pow(t2, e) - std::pow(t3, e)) - ratio;
      };
      double lo = 0.0, hi = 0.0;
      double prev_e = 0.02, prev_v = mismatch(prev_e);
      for (int k = 1; k <= 400; ++k) {
        const double e = 0.02 * std::pow(8.0 / 0.02, k / 400.0);
        const double v = mismatch(e);
        if (std::isfinite(prev_v) && std::isfinite(v) && prev_v * v <= 0.0) {
          lo = prev_e;
          hi = e;
          break;
        }
        prev_e = e;
        prev_v = v;
      }
      if (hi > 0.0) {
        for (int k = 0; k < 100; ++k) {
          const double mid = 0.5 * (lo + hi);
          if (mismatch(lo) * mismatch(mid) <= 0.0)
            hi = mid;
          else
            lo = mid;
        }
        fit.exponent = 0.5 * (lo + hi);
        fit.coefficient = (c1 - c2) / (std::pow(t1, fit.exponent) - std::pow(t2, fit.exponent));
        fit.level = c1 - fit.coefficient * std::pow(t1, fit.exponent);
        fit.valid = true;
      }
    }
  }
  if (fit.valid) return fit;

  // fallback: log-log fit of the gaps against the known target
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double gap = std::abs(levels[i] - target);
    if (!(gap > 0.0 && t[i] > 0.0)) continue;
    const double x = std::log(t[i]);
    const double y = std::log(gap);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2 && m * sxx - sx * sx > 0.0) {
    fit.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.coefficient = std::exp((sy - fit.exponent * sx) / m);
    fit.level = target;
    fit.valid = true;
  }
  return fit;
}

ExperimentReport run_sweep_alpha0(const SweepConfig& config) {
  if (config.mode != SweepConfig::Mode::alpha0)
    throw std::invalid_argument("run_sweep_alpha0: config mode mismatch");
  return run_sweep(config);
}

ExperimentReport run_sweep_alphaN(const SweepConfig& config) {
  if (config.mode != SweepConfig::Mode::alphaN)
    throw std::invalid_argument("run_sweep_alphaN: config mode mismatch");
  return run_sweep(config);
}

// --- serialization -----------------------------------------------------------

namespace {

JsonValue fit_to_json(const PowerLawFit& fit) {
  JsonValue v = JsonValue::object();
  v["coefficient"] = fit.coefficient;
  v["exponent"] = fit.exponent;
  v["level"] = fit.level;
  v["valid"] = fit.valid;
  return v;
}

JsonValue solve_to_json(const SolveSummary& s) {
  JsonValue v = JsonValue::object();
  v["boundary_mass"] = s.boundary_mass;
  v["converged"] = s.converged;
  v["energy"] = s.energy;
  v["error"] = s.error;
  v["iterations"] = s.iterations;
  JsonValue defects = JsonValue::array();
  for (double d : s.nehari_defects) defects.push_back(d);
  v["nehari_defects"] = std::move(defects);
  v["residual_h1"] = s.residual_h1;
  return v;
}

JsonValue coords_to_json(const std::array<double, 3>& x, int dimension) {
  JsonValue v = JsonValue::array();
  for (int a = 0; a < dimension; ++a) v.push_back(x[static_cast<std::size_t>(a)]);
  return v;
}

JsonValue grid_to_json(const GridSpec& grid) {
  JsonValue v = JsonValue::object();
  v["dimension"] = grid.dimension;
  v["half_length"] = grid.half_length;
  v["points_per_axis"] = grid.points_per_axis;
  return v;
}

}  // namespace

JsonValue report_to_json(const ExperimentReport& report) {
  JsonValue root = JsonValue::object();
  root["report_version"] = report.report_version;
  root["mode"] = report.mode;
  root["dimension"] = report.dimension;
  root["p"] = report.p;
  root["seed"] = report.seed;
  root["grid"] = grid_to_json(report.initial_grid);

  JsonValue solver = JsonValue::object();
  solver["energy_stall_tolerance"] = report.solver.energy_stall_tolerance;
  solver["initial_step"] = report.solver.initial_step;
  solver["max_iterations"] = report.solver.max_iterations;
  solver["residual_tolerance"] = report.solver.residual_tolerance;
  solver["seed"] = report.solver.seed;
  root["solver"] = std::move(solver);

  JsonValue extrapolation = JsonValue::object();
  extrapolation["gst"] = fit_to_json(report.gst_extrapolation);
  extrapolation["nod"] = fit_to_json(report.nod_extrapolation);
  root["extrapolation"] = std::move(extrapolation);

  JsonValue records = JsonValue::array();
  for (const auto& rec : report.records) {
    JsonValue r = JsonValue::object();
    r["alpha"] = rec.alpha;
    r["gamma_or_kappa_target"] = rec.gamma_or_kappa_target;
    r["nodal_target"] = rec.nodal_target;
    r["c_gst"] = rec.c_gst;
    r["c_nod"] = rec.c_nod;
    r["gst_gap"] = rec.gst_gap;
    r["nod_gap"] = rec.nod_gap;
    r["gst"] = solve_to_json(rec.gst);
    r["nod"] = solve_to_json(rec.nod);

    JsonValue box = JsonValue::object();
    box["doublings"] = rec.box.doublings;
    box["half_length"] = rec.box.half_length;
    box["points_per_axis"] = rec.box.points_per_axis;
    box["saturated"] = rec.box.saturated;
    r["box"] = std::move(box);

    JsonValue nodal = JsonValue::object();
    nodal["fit_error"] = rec.nodal.fit_error;
    nodal["s_scale"] = rec.nodal.s_scale;
    nodal["separation"] = rec.nodal.separation;
    nodal["separation_pow_nmalpha"] = rec.nodal.separation_pow_nmalpha;
    nodal["symmetry_defect"] = rec.nodal.symmetry_defect;
    nodal["t_scale"] = rec.nodal.t_scale;
    nodal["xi_minus"] = coords_to_json(rec.nodal.xi_minus, report.dimension);
    nodal["xi_plus"] = coords_to_json(rec.nodal.xi_plus, report.dimension);
    r["nodal"] = std::move(nodal);

    JsonValue checks = JsonValue::object();
    JsonValue fourier = JsonValue::array();
    for (const auto& c : rec.fourier_checks) {
      JsonValue j = JsonValue::object();
      j["alpha"] = c.alpha;
      j["beta"] = c.beta;
      j["holds"] = c.holds;
      j["lhs"] = c.lhs;
      j["rhs"] = c.rhs;
      j["s"] = c.s;
      fourier.push_back(std::move(j));
    }
    checks["fourier_bound"] = std::move(fourier);
    JsonValue riesz = JsonValue::array();
    for (const auto& c : rec.riesz_checks) {
      JsonValue j = JsonValue::object();
      j["alpha"] = c.alpha;
      j["bound_ratio"] = c.bound_ratio;
      j["error"] = c.error;
      riesz.push_back(std::move(j));
    }
    checks["riesz_error"] = std::move(riesz);
    JsonValue upper = JsonValue::array();
    for (const auto& c : rec.upper_checks) {
      JsonValue j = JsonValue::object();
      j["alpha"] = c.alpha;
      j["deficit"] = c.deficit;
      j["envelope"] = c.envelope;
      j["ratio"] = c.ratio;
      upper.push_back(std::move(j));
    }
    checks["upper_bound"] = std::move(upper);
    r["lemma_checks"] = std::move(checks);

    JsonValue files = JsonValue::object();
    files["gst"] = rec.gst_field_file;
    files["nod"] = rec.nod_field_file;
    r["fields"] = std::move(files);

    records.push_back(std::move(r));
  }
  root["records"] = std::move(records);
  return root;
}

std::string serialize_report_json(const ExperimentReport& report) {
  return report_to_json(report).dump();
}

std::string serialize_report_csv(const ExperimentReport& report) {
  const std::vector<std::string> header = {
      "alpha",           "c_gst",
      "c_nod",           "gst_gap",
      "nod_gap",         "separation",
      "separation_pow_nmalpha", "fit_error",
      "symmetry_defect", "t_scale",
      "s_scale",         "gst_iterations",
      "nod_iterations",  "gst_residual_h1",
      "nod_residual_h1", "box_half_length",
      "box_points",      "box_saturated"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& rec : report.records) {
    std::vector<std::string> row;
    row.push_back(format_double(rec.alpha));
    row.push_back(format_double(rec.c_gst));
    row.push_back(format_double(rec.c_nod));
    row.push_back(format_double(rec.gst_gap));
    row.push_back(format_double(rec.nod_gap));
    row.push_back(format_double(rec.nodal.separation));
    row.push_back(format_double(rec.nodal.separation_pow_nmalpha));
    row.push_back(format_double(rec.nodal.fit_error));
    row.push_back(format_double(rec.nodal.symmetry_defect));
    row.push_back(format_double(rec.nodal.t_scale));
    row.push_back(format_double(rec.nodal.s_scale));
    row.push_back(std::to_string(rec.gst.iterations));
    row.push_back(std::to_string(rec.nod.iterations));
    row.push_back(format_double(rec.gst.residual_h1));
    row.push_back(format_double(rec.nod.residual_h1));
    row.push_back(format_double(rec.box.half_length));
    row.push_back(std::to_string(rec.box.points_per_axis));
    row.push_back(rec.box.saturated ? "1" : "0");
    rows.push_back(std::move(row));
  }
  return format_csv(header, rows);
}

}  // namespace choq
