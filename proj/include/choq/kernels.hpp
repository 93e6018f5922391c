#pragma once

// Pointwise field algebra and reductions used by every inner loop of the
// library. Each operation has a scalar reference implementation and SIMD
// variants (AVX2 on x86-64, NEON on aarch64) selected once at runtime.
//
// Equivalence contract: for identical inputs, every backend produces
// bit-identical results. Reductions achieve this by accumulating into four
// independent lanes (lane = i mod 4) combined as (l0+l1)+(l2+l3), which is
// exactly the order a 4-wide vector accumulator produces. No FMA is used.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace choq::kernels {

enum class Backend { auto_detect, scalar, avx2, neon };

// Selects the backend for all subsequent kernel calls. auto_detect picks the
// widest variant the CPU supports. Intended for startup/tests, not for
// concurrent use while kernels are running.
void set_backend(Backend b);
Backend active_backend();
std::string_view backend_name();

void fill(std::span<double> out, double value);
void copy(std::span<const double> in, std::span<double> out);

void add(std::span<const double> a, std::span<const double> b, std::span<double> out);
void sub(std::span<const double> a, std::span<const double> b, std::span<double> out);
void mul(std::span<const double> a, std::span<const double> b, std::span<double> out);
void scale(std::span<const double> a, double s, std::span<double> out);

// y += a*x
void axpy(double a, std::span<const double> x, std::span<double> y);

double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);

double max_value(std::span<const double> a);
double min_value(std::span<const double> a);
double max_abs(std::span<const double> a);

// max(a,0) / min(a,0)
void positive_part(std::span<const double> a, std::span<double> out);
void negative_part(std::span<const double> a, std::span<double> out);

// |a|^p. Fast vector paths for p in {1,2,3,4}; general p falls back to the
// scalar libm path on every backend.
void abs_pow(std::span<const double> a, double p, std::span<double> out);

// |a|^{p-2} a for p >= 2; the p == 2 case is the identity (no singularity
// at a == 0) and for p > 2 the value at a == 0 is 0.
void signed_pow(std::span<const double> a, double p, std::span<double> out);

// out[i] = a[i]*b[i] (complex product, hand-rolled re/im formula)
void mul_complex(std::span<const std::complex<double>> a,
                 std::span<const std::complex<double>> b,
                 std::span<std::complex<double>> out);

// a[i] *= s[i] with a real diagonal symbol
void scale_complex(std::span<std::complex<double>> a, std::span<const double> s);

}  // namespace choq::kernels
