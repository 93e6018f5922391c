#pragma once

// Action functionals and their H1 gradients for the truncated-domain
// problems, plus Nehari-type projections.
//
// Gradient convention: residual_* returns the H1-preconditioned gradient
// r = u - (-Delta+1)^{-1} f(u), which satisfies the exact discrete identity
// h1_inner(r, v) = dJ(u)[v] for every grid field v. Descending along r is
// therefore a (preconditioned) gradient flow for the action.

#include <utility>

#include "choq/grid.hpp"
#include "choq/riesz.hpp"

namespace choq {

struct ChoquardParams {
  int dimension = 1;
  double p = 2.0;          // p >= 2
  double alpha = 0.5;      // 0 < alpha < dimension
  bool normalized = true;  // interaction kernel carries A_alpha

  // throws std::invalid_argument on out-of-range parameters
  static ChoquardParams make(int dimension, double p, double alpha, bool normalized);
  RieszKernelSpec kernel() const {
    return RieszKernelSpec{dimension, alpha, normalized};
  }
};

// J(u) = 1/2 ||u||_H1^2 - 1/(2p) int (K * |u|^p) |u|^p
double action_choquard(const Field& u, const ChoquardParams& params);
Field residual_choquard(const Field& u, const ChoquardParams& params);

// Phi_q(u) = 1/2 ||u||_H1^2 - 1/q int |u|^q      (q > 2)
double action_nls(const Field& u, double q);
Field residual_nls(const Field& u, double q);

// Psi_{p,mu}(u) = 1/2 ||u||_H1^2 - mu/(2p) (int |u|^p)^2      (p >= 2, mu > 0)
double action_nls_nonlocal(const Field& u, double p, double mu);
Field residual_nls_nonlocal(const Field& u, double p, double mu);

// t > 0 with t*u on the Nehari set of the corresponding functional:
// t^{2p-2} = ||u||_H1^2 / D(u), resp. t^{2p-2} = ||u||_H1^2 / (mu (int|u|^p)^2)
double nehari_scale(const Field& u, const ChoquardParams& params);
double nehari_scale_psi(const Field& u, double p, double mu);

struct NodalScales {
  double t = 1.0;
  double s = 1.0;
  double defect_plus = 0.0;   // nehari defects of t u+ + s u- (see below)
  double defect_minus = 0.0;
  int newton_iterations = 0;
};

// Maximizes
//   F(tau, sigma) = tau^{2/p} a+ / 2 + sigma^{2/p} a- / 2
//                   - (tau^2 B++ + 2 tau sigma B+- + sigma^2 B--) / (2p)
// over tau, sigma > 0 (a+- the H1 energies of the sign parts, B** the Riesz
// pairings of |u+|^p, |u-|^p) by a damped Newton iteration started from the
// decoupled scales tau0 = (a+/B++)^{p/(2p-2)}. Returns t = tau^{1/p},
// s = sigma^{1/p}. Requires both sign parts nonvanishing. Convergence is
// declared when both recombined defects are <= tol * max(a+, a-).
NodalScales nodal_scales(const Field& u, const ChoquardParams& params, double tol = 1e-12);

// <J'(u), u+-> with the sign-decoupled quadratic form:
//   defect+- = ||u+-||_H1^2 - [ B(|u+-|^p, |u+|^p) + B(|u+-|^p, |u-|^p) ]
std::pair<double, double> nehari_nodal_defects(const Field& u, const ChoquardParams& params);

}  // namespace choq
