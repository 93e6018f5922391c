#pragma once

// Riesz potential machinery: the kernel A_alpha |x|^{alpha-N} (or its
// unnormalized variant |x|^{alpha-N}), convolution against box-supported
// fields, and the associated bilinear pairing energies.
//
// The convolution is linear, not circular: the field is zero-padded to twice
// the box per axis, so every displacement that two points of the original box
// can realize is represented exactly. The kernel is sampled at displacement
// lattice points; the singular cell at zero displacement carries the cell
// average of the kernel (closed form in 1d, subcell quadrature with an
// equal-volume-ball center rule in 2d/3d).

#include <span>

#include "choq/grid.hpp"

namespace choq {

struct RieszKernelSpec {
  int dimension = 1;
  double alpha = 0.5;      // 0 < alpha < dimension
  bool normalized = true;  // multiply by A_alpha

  // throws std::invalid_argument unless 0 < alpha < dimension in {1,2,3}
  static RieszKernelSpec make(int dimension, double alpha, bool normalized);
};

// A_alpha = Gamma((N-alpha)/2) / (Gamma(alpha/2) pi^{N/2} 2^alpha)
double riesz_constant(int dimension, double alpha);

// Gamma(alpha/2) pi^{N/2} 2^alpha / Gamma((N-alpha)/2); the factor relating
// the unnormalized kernel to the normalized one
double riesz_normalization_ratio(int dimension, double alpha);

// sharp constant for the normalized pairing |int (I_alpha * f) g| with
// f, g in L^{2N/(N+alpha)}; tends to 1 as alpha -> 0
double hls_constant(int dimension, double alpha);

// sharp constant for the unnormalized pairing; tends to 1 as alpha -> N
double hls_constant_unnormalized(int dimension, double alpha);

// (K * f) restricted to the grid of f
Field riesz_convolve(const Field& f, const RieszKernelSpec& kernel);

// D(u) = int (K * |u|^p) |u|^p
double riesz_energy(const Field& u, double p, const RieszKernelSpec& kernel);

// B(f, g) = int (K * f) g  (symmetric)
double cross_riesz_energy(const Field& f, const Field& g, const RieszKernelSpec& kernel);

// direct double-quadrature pairing with the kernel argument shifted by an
// arbitrary offset vector: sum_{x,y} g(x) K(x - y + offset) f(y) h^{2d}.
// The offset may be far outside the box; O(M^2), intended for 1d fields.
double cross_riesz_energy_offset(const Field& f, const Field& g,
                                 const RieszKernelSpec& kernel,
                                 std::span<const double> offset);

// drops all cached kernel spectra (they are keyed by grid and kernel spec)
void clear_riesz_kernel_cache();

}  // namespace choq
