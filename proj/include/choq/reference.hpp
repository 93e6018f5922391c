#pragma once

// Reference objects of the two limit problems: groundstates of the local
// NLS functional Phi_q and of the nonlocal-in-name-only functional
// Psi_{p,mu}, their action levels, and the spectrum of the linearized
// operator at an NLS groundstate.

#include <vector>

#include "choq/grid.hpp"

namespace choq {

struct RadialProfile {
  std::vector<double> radii;   // uniform from 0
  std::vector<double> values;
  double decay_rate = 0.0;     // fitted exponential rate of the tail
};

// positive radial decaying solution of -Delta U + U = U^{q-1} on R^N;
// closed form for N = 1, shooting + bisection for N in {2, 3}
RadialProfile nls_groundstate_profile(int dimension, double q);

// the groundstate sampled on the grid, centered at the origin
Field nls_groundstate(int dimension, double q, const GridSpec& grid);

// gamma_q = Phi_q(U) evaluated on the grid
double gamma_level(int dimension, double q, const GridSpec& grid);

// groundstate V of Psi_{p,mu}: V = (mu int U_p^p)^{-1/(2p-2)} U_p where U_p
// is the NLS groundstate with exponent q = p; requires p > 2
Field limit_groundstate_V(int dimension, double p, double mu, const GridSpec& grid);

// kappa_{p,mu} = (1/2 - 1/(2p)) mu^{-1/(p-1)} (gamma_p / (1/2 - 1/p))^{(p-2)/(p-1)};
// the p = 2 case is 1/(4 mu) and needs no groundstate
double kappa_level(int dimension, double p, double mu, const GridSpec& grid);

struct SpectrumResult {
  std::vector<double> eigenvalues;   // ascending
  std::vector<Field> eigenvectors;   // L2-normalized
  int iterations = 0;
};

// lowest k eigenvalues of the linearization L v = -Delta v + v - (q-1) U^{q-2} v
// by a preconditioned block iteration (locally optimal subspace with the
// (-Delta+1)^{-1} preconditioner, dense Rayleigh-Ritz on the 3k-block)
SpectrumResult nondegeneracy_spectrum(const Field& U, double q, int k, double tol = 1e-8);

}  // namespace choq
