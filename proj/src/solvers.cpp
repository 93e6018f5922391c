#include "choq/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "choq/riesz.hpp"

namespace choq {
namespace {

double centroid_axis1(const Field& f) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += f.point(i)[0] * f[i];
    den += f[i];
  }
  return num / den;
}

template <typename F>
double golden_min(const F& f, double lo, double hi, int iterations) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iterations; ++it) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

struct NodalReprojector {
  const ChoquardParams& params;

  Field operator()(const Field& w) const {
    const Field wp = positive_part(w);
    const Field wm = negative_part(w);
    const double nw = norm_h1(w);
    if (norm_h1(wp) <= 1e-10 * nw)
      throw SolverError(SolverFailure::collapse_positive,
                        "nodal iterate lost its positive part");
    if (norm_h1(wm) <= 1e-10 * nw)
      throw SolverError(SolverFailure::collapse_negative,
                        "nodal iterate lost its negative part");
    const NodalScales ns = nodal_scales(w, params);
    Field out = ns.t * wp;
    axpy_in_place(ns.s, wm, out);
    return out;
  }
};

// shared descent loop: project(w) returns the reprojected iterate or throws
template <typename Project>
SolveResult descend(const ChoquardParams& params, const Field& initial,
                    const SolverConfig& config, const Project& project) {
  if (!(norm_h1(initial) > 0.0))
    throw std::invalid_argument("solver: initial field must be nonzero");

  Field u = project(initial);
  double action = action_choquard(u, params);
  SolveResult result;
  result.action_history.push_back(action);

  double step = config.initial_step;
  int iterations = 0;
  double residual_norm;

  // Near the optimum the per-step action decrease is of order ||r||^2 and
  // drops below double resolution long before the residual bottoms out, so
  // acceptance allows a 1-ulp-scale slack and the stall test additionally
  // requires the residual to have stopped improving.
  double best_residual = std::numeric_limits<double>::infinity();
  int plateau = 0;
  bool energy_stalled = false;

  for (;;) {
    const Field r = residual_choquard(u, params);
    residual_norm = norm_h1(r);
    if (residual_norm <= config.residual_tolerance) break;
    if (residual_norm < 0.999 * best_residual) {
      best_residual = residual_norm;
      plateau = 0;
    } else {
      ++plateau;
    }
    if (plateau >= 15 && energy_stalled) break;
    if (iterations >= config.max_iterations)
      throw SolverError(SolverFailure::max_iterations,
                        "solver hit the iteration limit before converging");

    bool accepted = false;
    double best_overshoot = std::numeric_limits<double>::infinity();
    SolverError last_failure(SolverFailure::line_search,
                             "backtracking could not decrease the action");
    for (int halving = 0; halving <= 40 && !accepted; ++halving) {
      Field cand = u;
      axpy_in_place(-step, r, cand);
      if (!(norm_h1(cand) > 1e-14 * norm_h1(u))) {
        last_failure = SolverError(SolverFailure::collapse,
                                   "iterate collapsed to zero during descent");
        step *= 0.5;
        continue;
      }
      try {
        Field proj = project(cand);
        const double cand_action = action_choquard(proj, params);
        const double slack = 4.0 * std::numeric_limits<double>::epsilon() *
                             std::max(1.0, std::abs(action));
        if (cand_action <= action + slack) {
          energy_stalled = action - cand_action <=
                           config.energy_stall_tolerance * std::max(1.0, std::abs(cand_action));
          u = std::move(proj);
          action = std::min(action, cand_action);
          result.action_history.push_back(cand_action);
          // cap the growth: a long run of accepted steps would otherwise
          // inflate the step geometrically past what 40 halvings can undo
          step = std::min(step * 1.3, 1024.0 * config.initial_step);
          accepted = true;
        } else {
          best_overshoot = std::min(best_overshoot, cand_action - action);
          step *= 0.5;
        }
      } catch (const SolverError& e) {
        last_failure = e;
        step *= 0.5;
      } catch (const std::invalid_argument&) {
        last_failure = SolverError(SolverFailure::collapse,
                                   "projection rejected a degenerate iterate");
        step *= 0.5;
      } catch (const std::runtime_error&) {
        step *= 0.5;
      }
    }
    if (!accepted) {
      // Every trial step left the action within evaluation noise of the
      // current value: the flow is terminally stalled, not diverging. Hold
      // the iterate and let the plateau test end the run.
      if (best_overshoot <=
          config.energy_stall_tolerance * std::max(1.0, std::abs(action))) {
        energy_stalled = true;
      } else {
        throw last_failure;
      }
    }
    ++iterations;
  }

  result.field = std::move(u);
  result.energy = action;
  result.residual_h1 = residual_norm;
  result.iterations = iterations;
  result.boundary_mass = boundary_mass(result.field);
  return result;
}

}  // namespace

SolveResult solve_groundstate(const ChoquardParams& params, const Field& initial,
                              const SolverConfig& config) {
  auto project = [&params](const Field& w) {
    return nehari_scale(w, params) * w;
  };
  SolveResult result = descend(params, initial, config, project);

  double top = 0.0, bottom = 0.0;
  for (double v : result.field.values()) {
    top = std::max(top, v);
    bottom = std::min(bottom, v);
  }
  if (top < -bottom) result.field = -1.0 * result.field;

  const double a = h1_inner(result.field, result.field);
  const double d = riesz_energy(result.field, params.p, params.kernel());
  result.nehari_defects = {a - d};
  return result;
}

SolveResult solve_nodal(const ChoquardParams& params, const Field& initial,
                        const SolverConfig& config) {
  SolveResult result = descend(params, initial, config, NodalReprojector{params});

  const Field up = positive_part(result.field);
  const Field um = negative_part(result.field);
  if (centroid_axis1(up) > centroid_axis1(-1.0 * um))
    result.field = -1.0 * result.field;

  const auto defects = nehari_nodal_defects(result.field, params);
  result.nehari_defects = {defects.first, defects.second};
  return result;
}

BumpFit fit_two_bumps(const Field& u, const Field& profile) {
  const GridSpec& g = u.grid();
  if (!(g == profile.grid()))
    throw std::invalid_argument("fit_two_bumps: field and profile grids differ");
  const int dim = g.dimension;

  const Field up = positive_part(u);
  const Field um = -1.0 * negative_part(u);
  if (!(norm_l2(up) > 0.0) || !(norm_l2(um) > 0.0))
    throw std::invalid_argument("fit_two_bumps: field must have two signed bumps");

  const SpectralField profile_hat = forward_transform(profile);
  const auto lattice_peak = [&](const Field& part) {
    SpectralField s = forward_transform(part);
    auto c = s.coefficients();
    const auto w = profile_hat.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::conj(w[i]);
    const Field corr = inverse_transform(s);
    std::size_t best = 0;
    for (std::size_t i = 1; i < corr.size(); ++i)
      if (corr[i] > corr[best]) best = i;
    return corr.point(best);
  };

  std::array<double, 3> xp = lattice_peak(up);
  std::array<double, 3> xm = lattice_peak(um);

  const double scale = norm_h1(u);
  const auto misfit = [&](const std::array<double, 3>& a,
                          const std::array<double, 3>& b) {
    Field model = translate(profile, std::span(a.data(), dim));
    axpy_in_place(-1.0, translate(profile, std::span(b.data(), dim)), model);
    return norm_h1(u - model);
  };

  const double h = g.spacing();
  double err = misfit(xp, xm);
  for (int round = 0; round < 50; ++round) {
    for (int axis = 0; axis < 2 * dim; ++axis) {
      double* coord = axis < dim ? &xp[axis] : &xm[axis - dim];
      const double center = *coord;
      *coord = golden_min(
          [&](double c) {
            *coord = c;
            return misfit(xp, xm);
          },
          center - 1.5 * h, center + 1.5 * h, 60);
    }
    const double improved = misfit(xp, xm);
    if (err - improved < 1e-10 * scale) {
      err = std::min(err, improved);
      break;
    }
    err = improved;
  }

  BumpFit fit;
  fit.xi_plus = xp;
  fit.xi_minus = xm;
  fit.fit_error_h1 = err / scale;
  double sep2 = 0.0;
  for (int a = 0; a < dim; ++a) sep2 += (xp[a] - xm[a]) * (xp[a] - xm[a]);
  fit.separation = std::sqrt(sep2);
  return fit;
}

double symmetry_defect(const Field& u) {
  const Field up = positive_part(u);
  const Field um = -1.0 * negative_part(u);
  if (!(norm_l2(up) > 0.0) || !(norm_l2(um) > 0.0))
    throw std::invalid_argument("symmetry_defect: field must change sign");

  const double scale = norm_h1(u);
  const auto defect = [&](double offset) {
    return norm_h1(u + reflect_axis1(u, offset)) / scale;
  };

  const double seed = centroid_axis1(up) + centroid_axis1(um);
  const double h = u.grid().spacing();
  double best_offset = seed;
  double best = defect(seed);
  for (int k = -2; k <= 2; ++k) {
    if (k == 0) continue;
    const double o = seed + k * h;
    const double d = defect(o);
    if (d < best) {
      best = d;
      best_offset = o;
    }
  }
  const double refined =
      golden_min(defect, best_offset - h, best_offset + h, 80);
  return std::min(best, defect(refined));
}

}  // namespace choq
