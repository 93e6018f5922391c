#include "choq/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "choq/kernels.hpp"

namespace choq {
namespace {

Field abs_pow_field(const Field& u, double p) {
  Field out(u.grid());
  kernels::abs_pow(u.values(), p, out.values());
  return out;
}

Field signed_pow_field(const Field& u, double p) {
  Field out(u.grid());
  kernels::signed_pow(u.values(), p, out.values());
  return out;
}

struct NodalData {
  double a_plus, a_minus;           // H1 energies of the sign parts
  double bpp, bpm, bmm;             // Riesz pairings of |u+|^p, |u-|^p
};

NodalData nodal_data(const Field& u, const ChoquardParams& params) {
  const Field up = positive_part(u);
  const Field um = negative_part(u);
  const double a_plus = h1_inner(up, up);
  const double a_minus = h1_inner(um, um);
  if (!(a_plus > 0.0) || !(a_minus > 0.0))
    throw std::invalid_argument("nodal projection requires both sign parts nonzero");
  const Field pp = abs_pow_field(up, params.p);
  const Field pm = abs_pow_field(um, params.p);
  const auto kernel = params.kernel();
  const Field cp = riesz_convolve(pp, kernel);
  const Field cm = riesz_convolve(pm, kernel);
  return {a_plus, a_minus, inner_l2(cp, pp), inner_l2(cp, pm), inner_l2(cm, pm)};
}

}  // namespace

ChoquardParams ChoquardParams::make(int dimension, double p, double alpha,
                                    bool normalized) {
  if (dimension < 1 || dimension > 3)
    throw std::invalid_argument("choquard: dimension must be 1, 2 or 3");
  if (!(p >= 2.0)) throw std::invalid_argument("choquard: p must be >= 2");
  if (!(alpha > 0.0) || !(alpha < dimension))
    throw std::invalid_argument("choquard: alpha must satisfy 0 < alpha < dimension");
  return ChoquardParams{dimension, p, alpha, normalized};
}

double action_choquard(const Field& u, const ChoquardParams& params) {
  return 0.5 * h1_inner(u, u) -
         riesz_energy(u, params.p, params.kernel()) / (2.0 * params.p);
}

Field residual_choquard(const Field& u, const ChoquardParams& params) {
  const Field pu = abs_pow_field(u, params.p);
  const Field conv = riesz_convolve(pu, params.kernel());
  const Field force = multiply(conv, signed_pow_field(u, params.p));
  Field r = u - helmholtz_inverse(force);
  return r;
}

double action_nls(const Field& u, double q) {
  if (!(q > 2.0)) throw std::invalid_argument("nls: q must exceed 2");
  return 0.5 * h1_inner(u, u) - integrate(abs_pow_field(u, q)) / q;
}

Field residual_nls(const Field& u, double q) {
  if (!(q > 2.0)) throw std::invalid_argument("nls: q must exceed 2");
  return u - helmholtz_inverse(signed_pow_field(u, q));
}

double action_nls_nonlocal(const Field& u, double p, double mu) {
  if (!(p >= 2.0) || !(mu > 0.0))
    throw std::invalid_argument("nls_nonlocal: need p >= 2 and mu > 0");
  const double mp = integrate(abs_pow_field(u, p));
  return 0.5 * h1_inner(u, u) - mu * mp * mp / (2.0 * p);
}

Field residual_nls_nonlocal(const Field& u, double p, double mu) {
  if (!(p >= 2.0) || !(mu > 0.0))
    throw std::invalid_argument("nls_nonlocal: need p >= 2 and mu > 0");
  const double mp = integrate(abs_pow_field(u, p));
  return u - helmholtz_inverse(mu * mp * signed_pow_field(u, p));
}

double nehari_scale(const Field& u, const ChoquardParams& params) {
  const double a = h1_inner(u, u);
  const double d = riesz_energy(u, params.p, params.kernel());
  if (!(d > 0.0)) throw std::invalid_argument("nehari_scale: zero field");
  return std::pow(a / d, 1.0 / (2.0 * params.p - 2.0));
}

double nehari_scale_psi(const Field& u, double p, double mu) {
  const double a = h1_inner(u, u);
  const double mp = integrate(abs_pow_field(u, p));
  if (!(mp > 0.0)) throw std::invalid_argument("nehari_scale_psi: zero field");
  return std::pow(a / (mu * mp * mp), 1.0 / (2.0 * p - 2.0));
}

NodalScales nodal_scales(const Field& u, const ChoquardParams& params, double tol) {
  const NodalData d = nodal_data(u, params);
  const double p = params.p;
  const double e = 2.0 / p;  // tau^{2/p} exponent

  const auto value = [&](double tau, double sigma) {
    return 0.5 * std::pow(tau, e) * d.a_plus + 0.5 * std::pow(sigma, e) * d.a_minus -
           (tau * tau * d.bpp + 2.0 * tau * sigma * d.bpm + sigma * sigma * d.bmm) /
               (2.0 * p);
  };
  // defect+- of t u+ + s u- equals p tau dF/dtau, resp. p sigma dF/dsigma
  const auto grad = [&](double tau, double sigma, double& gt, double& gs) {
    gt = (e / 2.0) * std::pow(tau, e - 1.0) * d.a_plus -
         (tau * d.bpp + sigma * d.bpm) / p;
    gs = (e / 2.0) * std::pow(sigma, e - 1.0) * d.a_minus -
         (sigma * d.bmm + tau * d.bpm) / p;
  };

  double tau = std::pow(d.a_plus / d.bpp, p / (2.0 * p - 2.0));
  double sigma = std::pow(d.a_minus / d.bmm, p / (2.0 * p - 2.0));
  const double scale = std::max(d.a_plus, d.a_minus);

  int it = 0;
  for (; it < 200; ++it) {
    double gt, gs;
    grad(tau, sigma, gt, gs);
    const double def_p = p * tau * gt, def_m = p * sigma * gs;
    if (std::abs(def_p) <= tol * scale && std::abs(def_m) <= tol * scale) break;

    // damped Newton step on the gradient of the concave F
    const double h11 = (e / 2.0) * (e - 1.0) * std::pow(tau, e - 2.0) * d.a_plus - d.bpp / p;
    const double h22 = (e / 2.0) * (e - 1.0) * std::pow(sigma, e - 2.0) * d.a_minus - d.bmm / p;
    const double h12 = -d.bpm / p;
    const double det = h11 * h22 - h12 * h12;
    double dt, ds;
    if (det != 0.0 && std::isfinite(det)) {
      dt = -(h22 * gt - h12 * gs) / det;
      ds = -(h11 * gs - h12 * gt) / det;
    } else {
      dt = gt;  // fallback: plain ascent
      ds = gs;
    }

    const double f0 = value(tau, sigma);
    double lambda = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving) {
      const double tn = tau + lambda * dt, sn = sigma + lambda * ds;
      if (tn > 0.0 && sn > 0.0 && value(tn, sn) > f0) {
        tau = tn;
        sigma = sn;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) {
      // Near the maximum the quadratic gain of a Newton step falls below the
      // rounding noise of F and the strict increase test must fail. The pure
      // step is contractive there and squares the defect, so take it when it
      // is small relative to the point (positivity is then automatic).
      if (std::abs(dt) + std::abs(ds) <= 1e-6 * (tau + sigma)) {
        tau += dt;
        sigma += ds;
        continue;
      }
      throw std::runtime_error("nodal_scales: line search failed to increase F");
    }
  }

  double gt, gs;
  grad(tau, sigma, gt, gs);
  NodalScales out;
  out.t = std::pow(tau, 1.0 / p);
  out.s = std::pow(sigma, 1.0 / p);
  out.defect_plus = p * tau * gt;
  out.defect_minus = p * sigma * gs;
  out.newton_iterations = it;
  return out;
}

std::pair<double, double> nehari_nodal_defects(const Field& u,
                                               const ChoquardParams& params) {
  const NodalData d = nodal_data(u, params);
  return {d.a_plus - (d.bpp + d.bpm), d.a_minus - (d.bmm + d.bpm)};
}

}  // namespace choq
