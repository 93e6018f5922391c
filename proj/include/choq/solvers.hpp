#pragma once

// Constrained descent solvers for the groundstate and least-energy nodal
// problems, plus the structural diagnostics used by the sweep experiments
// (two-bump decomposition and reflection-symmetry defect).
//
// Both solvers run preconditioned gradient descent with reprojection: every
// accepted iterate lies exactly on its constraint set (Nehari manifold for
// the groundstate, Nehari nodal set for the sign-changing problem), so the
// reported action is always an upper bound for the constrained level.
// Steps are backtracked until the action decreases (up to roundoff slack
// near convergence, so the action history is nonincreasing only to about
// one ulp); termination is either a small equation residual or an energy
// stall with a plateaued residual, whichever comes first. The residual is
// the H1 norm of the preconditioned Euler-Lagrange residual, an absolute
// quantity.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "choq/functionals.hpp"
#include "choq/grid.hpp"

namespace choq {

struct SolverConfig {
  int max_iterations = 2000;
  double initial_step = 1.0;
  double residual_tolerance = 1e-9;      // H1 norm of the residual field
  double energy_stall_tolerance = 1e-13; // relative action decrease per step
  std::uint64_t seed = 0;                // used by callers for randomized starts
};

enum class SolverFailure {
  max_iterations,
  collapse,           // iterate collapsed to zero
  collapse_positive,  // nodal: positive part vanished
  collapse_negative,  // nodal: negative part vanished
  line_search,        // backtracking could not decrease the action
};

class SolverError : public std::runtime_error {
 public:
  SolverError(SolverFailure kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  SolverFailure kind() const { return kind_; }

 private:
  SolverFailure kind_;
};

struct SolveResult {
  Field field;
  double energy = 0.0;
  double residual_h1 = 0.0;
  int iterations = 0;
  std::vector<double> nehari_defects;  // one entry (groundstate) or two (nodal)
  double boundary_mass = 0.0;
  std::vector<double> action_history;  // action after every accepted step
};

// Projected descent over the Nehari manifold. The returned field is
// nonnegative-oriented (flipped when the negative extremum dominates).
SolveResult solve_groundstate(const ChoquardParams& params, const Field& initial,
                              const SolverConfig& config = {});

// Projected descent over the Nehari nodal set; the iterate is recombined as
// t u+ + s u- after every step. The returned field is oriented so the
// positive bump sits at the smaller axis-1 coordinate. Throws SolverError
// with collapse_positive / collapse_negative when a sign part dies.
SolveResult solve_nodal(const ChoquardParams& params, const Field& initial,
                        const SolverConfig& config = {});

struct BumpFit {
  std::array<double, 3> xi_plus{};   // center of the positive copy of the profile
  std::array<double, 3> xi_minus{};  // center of the negative copy
  double fit_error_h1 = 0.0;         // relative H1 misfit
  double separation = 0.0;           // |xi_plus - xi_minus|
};

// Best approximation of u by profile(. - xi_plus) - profile(. - xi_minus):
// lattice cross-correlation peaks refined by per-coordinate golden search
// with spectral translation. The profile must be a centered positive bump.
BumpFit fit_two_bumps(const Field& u, const Field& profile);

// min over reflection offsets o of ||u + u(o - x1, .)||_H1 / ||u||_H1,
// seeded at the sign-part centroids and refined locally. Zero means u is
// exactly odd about some axis-1 hyperplane.
double symmetry_defect(const Field& u);

}  // namespace choq
