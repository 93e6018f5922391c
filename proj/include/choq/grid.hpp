#pragma once

// Periodic grid fields on [-L, L)^d and the spectral operations built on
// them. Conventions:
//   x_j    = -L + j h,  h = 2L/n             (cell-centered at lattice sites)
//   xi_k   = k/(2L), k in {-n/2, ..., n/2-1} (physical frequency)
//   u_hat(k) = h^d (-1)^{k1+...+kd} DFT(u)_k  approximates the continuous
//              Fourier transform of u restricted to the box.
// With these scalings, integrate(u v) equals the frequency-side sum of
// u_hat conj(v_hat) times (2L)^{-d} (discrete Parseval), and the H1 inner
// product uses the symbol 1 + 4 pi^2 |xi|^2.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace choq {

struct GridSpec {
  int dimension = 1;        // 1, 2 or 3
  double half_length = 1.0; // L; the box is [-L, L) per axis
  int points_per_axis = 8;  // n; power of two, >= 8

  // throws std::invalid_argument on out-of-range parameters
  static GridSpec make(int dimension, double half_length, int points_per_axis);

  double spacing() const { return 2.0 * half_length / points_per_axis; }
  std::size_t cell_count() const;
  double cell_volume() const;
  double coordinate(int index) const { return -half_length + index * spacing(); }
  // signed frequency index for DFT bin j: k in [-n/2, n/2)
  int frequency_index(int j) const {
    return j < points_per_axis / 2 ? j : j - points_per_axis;
  }
  double frequency(int j) const { return frequency_index(j) / (2.0 * half_length); }

  bool operator==(const GridSpec&) const = default;
};

class Field {
 public:
  Field() = default;
  explicit Field(const GridSpec& grid);  // zero field
  Field(const GridSpec& grid, std::vector<double> values);  // takes ownership

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  // row-major index over axes (axis 1 slowest)
  std::size_t index(std::span<const int> multi) const;
  // coordinates of a flat index
  std::array<double, 3> point(std::size_t flat) const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

// Complex spectral coefficients in the physical convention described above,
// stored in DFT bin order (bin j <-> frequency index frequency_index(j)).
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const GridSpec& grid, std::vector<std::complex<double>> coeff);

  const GridSpec& grid() const { return grid_; }
  std::span<const std::complex<double>> coefficients() const { return coeff_; }
  std::span<std::complex<double>> coefficients() { return coeff_; }

 private:
  GridSpec grid_;
  std::vector<std::complex<double>> coeff_;
};

// Samples f at every grid point. The callable receives the coordinates as
// an array (unused trailing entries are zero).
Field sample(const GridSpec& grid, const std::function<double(const std::array<double, 3>&)>& f);

SpectralField forward_transform(const Field& u);
Field inverse_transform(const SpectralField& s);  // discards imaginary part

double integrate(const Field& u);                        // h^d sum
double inner_l2(const Field& u, const Field& v);         // integrate(u v)
double norm_l2(const Field& u);
double h1_inner(const Field& u, const Field& v);         // grad.grad + u v, spectral
double norm_h1(const Field& u);
// || (-Delta)^{s/2} u ||_{L2} via the symbol (2 pi |xi|)^s
double sobolev_seminorm(const Field& u, double s);

// F^{-1}[ symbol(xi) F[u] ] for a real radial-in-xi symbol given |xi|^2
Field apply_fourier_symbol(const Field& u, const std::function<double(double)>& symbol_of_xi2);
// (-Delta + 1)^{-1} u
Field helmholtz_inverse(const Field& u);

// signed sign parts: u = positive_part(u) + negative_part(u) pointwise,
// with positive_part >= 0 and negative_part <= 0
Field positive_part(const Field& u);
Field negative_part(const Field& u);

// u(. - shift). If every shift component is an integer multiple of h the
// translation is an exact index roll; otherwise it is applied spectrally
// with the Nyquist mode treated as a cosine so the result stays real.
Field translate(const Field& u, std::span<const double> shift);

// Reflection across the hyperplane x1 = m/2 composed with the periodic
// identification: (x1, x') -> (m - x1, x'). When m is an integer multiple
// of h this is an exact permutation of grid values; otherwise spectral.
Field reflect_axis1(const Field& u, double m);

// max |u| over the outermost cell shell (points with an extremal index on
// some axis); the box-truncation diagnostic.
double boundary_mass(const Field& u);

// Linear-algebra conveniences on matching grids.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field multiply(const Field& a, const Field& b);  // pointwise
void axpy_in_place(double a, const Field& x, Field& y);

// CHQF field container: magic "CHQF", u32 version=1, u8 dimension,
// u64 points_per_axis, f64 half_length, then n^d f64 values, row-major,
// little-endian throughout.
void write_chqf(const std::string& path, const Field& u);
Field read_chqf(const std::string& path);

}  // namespace choq
