#pragma once

// The numerical laboratory: quantitative checks of the estimates that drive
// the two asymptotic regimes of the interaction exponent, and alpha-sweep
// experiments that track groundstate and nodal levels, two-bump geometry and
// odd-symmetry defects toward both endpoints.
//
// Every check record carries both sides of its inequality (or the raw gap it
// measures) so a failing run can be audited from the report alone.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "choq/functionals.hpp"
#include "choq/grid.hpp"
#include "choq/report.hpp"
#include "choq/solvers.hpp"

namespace choq {

// --- estimate checks -------------------------------------------------------

// |int (I_alpha*f) g - int f g| against the fully explicit spectral bound
//   (alpha/beta ||I_beta*f||_L2 + alpha/s ||(-Delta)^{s/2} f||_L2) ||g||_L2.
// Requires 0 < alpha <= beta < N and s in (0, N).
struct FourierBoundRecord {
  double alpha = 0.0;
  double beta = 0.0;
  double s = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;  // lhs <= rhs (1 + 1e-6)
};
FourierBoundRecord check_fourier_bound(const Field& f, const Field& g, double alpha,
                                       double beta, double s);

// error = |int |u|^{2p} - int (I_alpha*|u|^p)|u|^p| and its ratio to
// alpha ||u||_H1^{2p}; the ratio stays bounded along a shrinking-alpha ladder.
struct RieszErrorRecord {
  double alpha = 0.0;
  double error = 0.0;
  double bound_ratio = 0.0;  // error / (alpha h1_inner(u,u)^p)
};
RieszErrorRecord check_riesz_energy_error(const Field& u, double p, double alpha);

// Negative control: f_n = cos(2 pi n x_1) psi concentrates its spectrum near
// frequency n, where the symbol gap |(2 pi |xi|)^{-alpha} - 1| is order one
// however small alpha is. Reports the signed error
//   int (I_{alpha(n)} * f_n) f_n - int f_n^2,
// which stays order one (and negative) when n^{alpha(n)} stays away from 1,
// instead of vanishing proportionally to alpha.
struct OscillationRecord {
  int frequency = 0;
  double alpha = 0.0;
  double error = 0.0;  // signed
  double mass = 0.0;   // int f_n^2, the magnitude scale
};
std::vector<OscillationRecord> check_oscillation_degradation(
    const Field& psi, const std::vector<int>& frequencies,
    const std::function<double(int)>& alpha_rule);

// Upper bound for the unnormalized potential near the top endpoint:
//   max_x (K_alpha * f)(x) - int f <= C (N - alpha) / (r alpha - N)^{1 - 1/r} (int f^r)^{1/r}.
// Requires f >= 0 and every alpha in (N/r, N). The summary fits
// log(deficit) against log(N - alpha); the estimate predicts a slope near 1.
struct UpperBoundRecord {
  double alpha = 0.0;
  double deficit = 0.0;   // max_x (K_alpha * f)(x) - int f
  double envelope = 0.0;  // (N - alpha) / (r alpha - N)^{1 - 1/r}
  double ratio = 0.0;     // deficit / envelope
};
struct UpperBoundSummary {
  std::vector<UpperBoundRecord> records;
  double fitted_exponent = 0.0;  // least-squares slope of the log-log fit
  double ratio_max = 0.0;
  double ratio_min = 0.0;
};
UpperBoundSummary check_upper_bound_alphaN(const Field& f, const std::vector<double>& alpha_list,
                                           double r);

// Delocalized pairing limit near the top endpoint: with g displaced by
// d = separation_rule(alpha) along axis 1 (handled analytically, the
// displacement may exceed any box),
//   int (K_alpha * f) g(. - d e_1)  ->  rho (int f)(int g),
// where rho = (1 + d)^{alpha - N} is the dilution factor induced by the
// chosen rule. Requires f, g >= 0.
struct TranslatedLimitRecord {
  double alpha = 0.0;
  double separation = 0.0;
  double pairing = 0.0;
  double target = 0.0;  // rho (int f)(int g)
  double gap = 0.0;     // |pairing - target| / target
};
std::vector<TranslatedLimitRecord> check_translated_limit(
    const Field& f, const Field& g, const std::vector<double>& alpha_list,
    const std::function<double(double)>& separation_rule);

// --- sweeps ------------------------------------------------------------------

struct SweepConfig {
  enum class Mode { alpha0, alphaN };

  Mode mode = Mode::alpha0;
  std::vector<double> alpha_list;  // strictly monotone toward the endpoint
  int dimension = 1;
  double p = 2.0;
  GridSpec grid;  // starting grid; box adaptation may enlarge it
  SolverConfig solver;
  std::string output_directory;  // when nonempty, per-alpha CHQF fields are written

  // Validated defaults for each mode (N = 1 experiments at box 30, n = 1024).
  static SweepConfig alpha0_default();
  static SweepConfig alphaN_default();

  // throws std::invalid_argument on an inconsistent configuration
  void validate() const;
};

struct SolveSummary {
  bool converged = false;
  double energy = 0.0;
  double residual_h1 = 0.0;
  int iterations = 0;
  double boundary_mass = 0.0;
  std::vector<double> nehari_defects;
  std::string error;  // empty on success
};

struct NodalGeometry {
  double separation = 0.0;
  double separation_pow_nmalpha = 0.0;  // separation^(N - alpha)
  double fit_error = 0.0;               // relative H1 misfit of the two-bump ansatz
  double symmetry_defect = 0.0;
  double t_scale = 0.0;  // Nehari scale of u+ for the limit functional
  double s_scale = 0.0;  // same for u-
  std::array<double, 3> xi_plus{};
  std::array<double, 3> xi_minus{};
};

struct BoxRecord {
  double half_length = 0.0;
  int points_per_axis = 0;
  int doublings = 0;       // how many times this alpha point enlarged the box
  bool saturated = false;  // still violating the guards at the doubling cap
};

struct AlphaRecord {
  double alpha = 0.0;
  double gamma_or_kappa_target = 0.0;  // groundstate limit level
  double nodal_target = 0.0;           // nodal limit level
  double c_gst = 0.0;
  double c_nod = 0.0;
  double gst_gap = 0.0;  // |c_gst - gamma_or_kappa_target|
  double nod_gap = 0.0;  // |c_nod - nodal_target|
  SolveSummary gst;
  SolveSummary nod;
  NodalGeometry nodal;
  BoxRecord box;
  // audit records evaluated on the computed groundstate
  std::vector<FourierBoundRecord> fourier_checks;   // alpha0 mode
  std::vector<RieszErrorRecord> riesz_checks;       // alpha0 mode
  std::vector<UpperBoundRecord> upper_checks;       // alphaN mode
  std::string gst_field_file;  // CHQF file names when the sweep writes fields
  std::string nod_field_file;
};

struct PowerLawFit {
  bool valid = false;
  double exponent = 0.0;
  double coefficient = 0.0;  // gap ~ coefficient * t^exponent, t the distance to the endpoint
  double level = 0.0;        // three-point extrapolated limit of the raw level
};

struct ExperimentReport {
  int report_version = 1;
  std::string mode;  // "alpha0" | "alphaN"
  int dimension = 1;
  double p = 2.0;
  std::uint64_t seed = 0;
  GridSpec initial_grid;
  SolverConfig solver;
  std::vector<AlphaRecord> records;  // in schedule order
  PowerLawFit gst_extrapolation;
  PowerLawFit nod_extrapolation;
};

// Least-squares slope of log(gap) against log(t) over all points with
// positive gap; also extrapolates the raw levels with a three-point power law
// c(t) = level + coefficient t^exponent on the last three schedule points.
PowerLawFit fit_power_law(const std::vector<double>& t, const std::vector<double>& levels,
                          double target);

// Runs the sweep for its mode. Solver failures are recorded in the per-alpha
// records and the sweep continues. Identical configurations (including the
// solver seed) produce identical reports.
ExperimentReport run_sweep_alpha0(const SweepConfig& config);
ExperimentReport run_sweep_alphaN(const SweepConfig& config);

// --- serialization -----------------------------------------------------------

JsonValue report_to_json(const ExperimentReport& report);
std::string serialize_report_json(const ExperimentReport& report);
// Flat per-alpha scalar table. Columns, in order: alpha, c_gst, c_nod,
// gst_gap, nod_gap, separation, separation_pow_nmalpha, fit_error,
// symmetry_defect, t_scale, s_scale, gst_iterations, nod_iterations,
// gst_residual_h1, nod_residual_h1, box_half_length, box_points, box_saturated.
std::string serialize_report_csv(const ExperimentReport& report);

}  // namespace choq
