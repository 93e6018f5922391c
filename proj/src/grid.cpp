#include "choq/grid.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "choq/kernels.hpp"
#include "fft.hpp"

namespace choq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument("field operation on mismatched grids");
}

std::vector<int> dft_dims(const GridSpec& g) {
  return std::vector<int>(static_cast<std::size_t>(g.dimension), g.points_per_axis);
}

// decodes a flat row-major index into per-axis indices (axis 0 slowest)
inline void decode(const GridSpec& g, std::size_t flat, int* j) {
  const int n = g.points_per_axis;
  for (int a = g.dimension - 1; a >= 0; --a) {
    j[a] = static_cast<int>(flat % n);
    flat /= n;
  }
}

std::vector<std::complex<double>> raw_dft(const Field& u, int sign) {
  std::vector<std::complex<double>> in(u.size()), out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) in[i] = u[i];
  detail::dft(dft_dims(u.grid()), in.data(), out.data(), sign);
  return out;
}

}  // namespace

GridSpec GridSpec::make(int dimension, double half_length, int points_per_axis) {
  if (dimension < 1 || dimension > 3)
    throw std::invalid_argument("grid: dimension must be 1, 2 or 3");
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw std::invalid_argument("grid: half_length must be positive and finite");
  if (points_per_axis < 8 || !std::has_single_bit(static_cast<unsigned>(points_per_axis)))
    throw std::invalid_argument("grid: points_per_axis must be a power of two >= 8");
  return GridSpec{dimension, half_length, points_per_axis};
}

std::size_t GridSpec::cell_count() const {
  std::size_t m = 1;
  for (int a = 0; a < dimension; ++a) m *= static_cast<std::size_t>(points_per_axis);
  return m;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dimension; ++a) v *= spacing();
  return v;
}

Field::Field(const GridSpec& grid) : grid_(grid), values_(grid.cell_count(), 0.0) {}

Field::Field(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count())
    throw std::invalid_argument("field: value count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("field: non-finite value");
}

std::size_t Field::index(std::span<const int> multi) const {
  const int n = grid_.points_per_axis;
  std::size_t flat = 0;
  for (int a = 0; a < grid_.dimension; ++a) {
    int j = multi[a] % n;
    if (j < 0) j += n;
    flat = flat * n + static_cast<std::size_t>(j);
  }
  return flat;
}

std::array<double, 3> Field::point(std::size_t flat) const {
  int j[3] = {0, 0, 0};
  decode(grid_, flat, j);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < grid_.dimension; ++a) x[a] = grid_.coordinate(j[a]);
  return x;
}

SpectralField::SpectralField(const GridSpec& grid, std::vector<std::complex<double>> coeff)
    : grid_(grid), coeff_(std::move(coeff)) {
  if (coeff_.size() != grid_.cell_count())
    throw std::invalid_argument("spectral field: coefficient count does not match grid");
}

Field sample(const GridSpec& grid,
             const std::function<double(const std::array<double, 3>&)>& f) {
  Field u(grid);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = f(u.point(i));
  return u;
}

SpectralField forward_transform(const Field& u) {
  auto out = raw_dft(u, -1);
  const GridSpec& g = u.grid();
  const double hpow = g.cell_volume();
  int j[3];
  for (std::size_t i = 0; i < out.size(); ++i) {
    decode(g, i, j);
    int parity = 0;
    for (int a = 0; a < g.dimension; ++a) parity += j[a];
    out[i] *= (parity & 1) ? -hpow : hpow;
  }
  return SpectralField(g, std::move(out));
}

Field inverse_transform(const SpectralField& s) {
  const GridSpec& g = s.grid();
  std::vector<std::complex<double>> in(s.coefficients().begin(), s.coefficients().end());
  const double scale = 1.0 / (g.cell_volume() * static_cast<double>(g.cell_count()));
  int j[3];
  for (std::size_t i = 0; i < in.size(); ++i) {
    decode(g, i, j);
    int parity = 0;
    for (int a = 0; a < g.dimension; ++a) parity += j[a];
    in[i] *= (parity & 1) ? -scale : scale;
  }
  std::vector<std::complex<double>> out(in.size());
  detail::dft(dft_dims(g), in.data(), out.data(), +1);
  Field u(g);
  for (std::size_t i = 0; i < out.size(); ++i) u[i] = out[i].real();
  return u;
}

double integrate(const Field& u) {
  return u.grid().cell_volume() * kernels::sum(u.values());
}

double inner_l2(const Field& u, const Field& v) {
  check_same_grid(u, v);
  return u.grid().cell_volume() * kernels::dot(u.values(), v.values());
}

double norm_l2(const Field& u) { return std::sqrt(inner_l2(u, u)); }

namespace {

// frequency-side weighted pairing h^d/M sum_k w(|xi_k|^2) U_k conj(V_k)
double spectral_pairing(const Field& u, const Field& v,
                        const std::function<double(double)>& weight_of_xi2) {
  check_same_grid(u, v);
  const GridSpec& g = u.grid();
  const auto U = raw_dft(u, -1);
  const auto V = raw_dft(v, -1);
  std::vector<double> xi2(g.points_per_axis);
  for (int j = 0; j < g.points_per_axis; ++j) {
    const double f = g.frequency(j);
    xi2[j] = f * f;
  }
  double acc = 0.0;
  int j[3];
  for (std::size_t i = 0; i < U.size(); ++i) {
    decode(g, i, j);
    double r2 = 0.0;
    for (int a = 0; a < g.dimension; ++a) r2 += xi2[j[a]];
    const double re = U[i].real() * V[i].real() + U[i].imag() * V[i].imag();
    acc += weight_of_xi2(r2) * re;
  }
  return acc * g.cell_volume() / static_cast<double>(g.cell_count());
}

}  // namespace

double h1_inner(const Field& u, const Field& v) {
  constexpr double four_pi2 = kTwoPi * kTwoPi;
  return spectral_pairing(u, v, [](double xi2) { return 1.0 + four_pi2 * xi2; });
}

double norm_h1(const Field& u) { return std::sqrt(h1_inner(u, u)); }

double sobolev_seminorm(const Field& u, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("sobolev_seminorm: s must be positive");
  const double q = spectral_pairing(u, u, [s](double xi2) {
    return xi2 == 0.0 ? 0.0 : std::pow(kTwoPi * kTwoPi * xi2, s);
  });
  return std::sqrt(std::max(q, 0.0));
}

Field apply_fourier_symbol(const Field& u,
                           const std::function<double(double)>& symbol_of_xi2) {
  const GridSpec& g = u.grid();
  auto U = raw_dft(u, -1);
  std::vector<double> xi2(g.points_per_axis);
  for (int j = 0; j < g.points_per_axis; ++j) {
    const double f = g.frequency(j);
    xi2[j] = f * f;
  }
  int j[3];
  for (std::size_t i = 0; i < U.size(); ++i) {
    decode(g, i, j);
    double r2 = 0.0;
    for (int a = 0; a < g.dimension; ++a) r2 += xi2[j[a]];
    U[i] *= symbol_of_xi2(r2);
  }
  std::vector<std::complex<double>> out(U.size());
  detail::dft(dft_dims(g), U.data(), out.data(), +1);
  Field w(g);
  const double scale = 1.0 / static_cast<double>(g.cell_count());
  for (std::size_t i = 0; i < out.size(); ++i) w[i] = out[i].real() * scale;
  return w;
}

Field helmholtz_inverse(const Field& u) {
  constexpr double four_pi2 = kTwoPi * kTwoPi;
  return apply_fourier_symbol(u, [](double xi2) { return 1.0 / (1.0 + four_pi2 * xi2); });
}

Field positive_part(const Field& u) {
  Field out(u.grid());
  kernels::positive_part(u.values(), out.values());
  return out;
}

Field negative_part(const Field& u) {
  Field out(u.grid());
  kernels::negative_part(u.values(), out.values());
  return out;
}

Field translate(const Field& u, std::span<const double> shift) {
  const GridSpec& g = u.grid();
  if (std::ssize(shift) != g.dimension)
    throw std::invalid_argument("translate: shift dimension mismatch");
  const double h = g.spacing();
  const int n = g.points_per_axis;

  bool on_lattice = true;
  int roll[3] = {0, 0, 0};
  for (int a = 0; a < g.dimension; ++a) {
    const double r = shift[a] / h;
    const double rn = std::round(r);
    if (std::abs(r - rn) < 1e-12 * std::max(1.0, std::abs(r))) {
      roll[a] = static_cast<int>(std::llround(rn)) % n;
      if (roll[a] < 0) roll[a] += n;
    } else {
      on_lattice = false;
      break;
    }
  }

  if (on_lattice) {
    Field out(g);
    int j[3];
    for (std::size_t i = 0; i < u.size(); ++i) {
      decode(g, i, j);
      std::size_t src = 0;
      for (int a = 0; a < g.dimension; ++a) {
        int ja = j[a] - roll[a];
        if (ja < 0) ja += n;
        src = src * n + static_cast<std::size_t>(ja);
      }
      out[i] = u[src];
    }
    return out;
  }

  // spectral phase shift; taking the real part after the inverse transform
  // turns the unpaired Nyquist mode into its cosine treatment
  auto U = raw_dft(u, -1);
  std::vector<std::complex<double>> phase(static_cast<std::size_t>(g.dimension) * n);
  for (int a = 0; a < g.dimension; ++a)
    for (int j = 0; j < n; ++j) {
      const double th = -kTwoPi * g.frequency(j) * shift[a];
      phase[static_cast<std::size_t>(a) * n + j] = {std::cos(th), std::sin(th)};
    }
  int j[3];
  for (std::size_t i = 0; i < U.size(); ++i) {
    decode(g, i, j);
    std::complex<double> ph{1.0, 0.0};
    for (int a = 0; a < g.dimension; ++a)
      ph *= phase[static_cast<std::size_t>(a) * n + j[a]];
    U[i] *= ph;
  }
  std::vector<std::complex<double>> out(U.size());
  detail::dft(dft_dims(g), U.data(), out.data(), +1);
  Field w(g);
  const double scale = 1.0 / static_cast<double>(g.cell_count());
  for (std::size_t i = 0; i < out.size(); ++i) w[i] = out[i].real() * scale;
  return w;
}

Field reflect_axis1(const Field& u, double m) {
  const GridSpec& g = u.grid();
  const double h = g.spacing();
  const int n = g.points_per_axis;
  const double r = m / h;
  const double rn = std::round(r);

  if (std::abs(r - rn) < 1e-12 * std::max(1.0, std::abs(r))) {
    // x_{j'} = m - x_j (mod 2L)  <=>  j' = (r - j) mod n
    int ri = static_cast<int>(std::llround(rn)) % n;
    if (ri < 0) ri += n;
    Field out(g);
    int j[3];
    for (std::size_t i = 0; i < u.size(); ++i) {
      decode(g, i, j);
      int j0 = (ri - j[0]) % n;
      if (j0 < 0) j0 += n;
      std::size_t src = static_cast<std::size_t>(j0);
      for (int a = 1; a < g.dimension; ++a)
        src = src * n + static_cast<std::size_t>(j[a]);
      out[i] = u[src];
    }
    return out;
  }

  // w_hat(xi1, xi') = e^{-2 pi i xi1 m} u_hat(-xi1, xi')
  auto U = raw_dft(u, -1);
  std::vector<std::complex<double>> W(U.size());
  int j[3];
  for (std::size_t i = 0; i < U.size(); ++i) {
    decode(g, i, j);
    const int j0r = (n - j[0]) % n;  // bin of -xi1 (Nyquist maps to itself)
    std::size_t src = static_cast<std::size_t>(j0r);
    for (int a = 1; a < g.dimension; ++a) src = src * n + static_cast<std::size_t>(j[a]);
    const double th = -kTwoPi * g.frequency(j[0]) * m;
    W[i] = U[src] * std::complex<double>{std::cos(th), std::sin(th)};
  }
  std::vector<std::complex<double>> out(W.size());
  detail::dft(dft_dims(g), W.data(), out.data(), +1);
  Field w(g);
  const double scale = 1.0 / static_cast<double>(g.cell_count());
  for (std::size_t i = 0; i < out.size(); ++i) w[i] = out[i].real() * scale;
  return w;
}

double boundary_mass(const Field& u) {
  const GridSpec& g = u.grid();
  const int n = g.points_per_axis;
  double m = 0.0;
  int j[3];
  for (std::size_t i = 0; i < u.size(); ++i) {
    decode(g, i, j);
    bool on_shell = false;
    for (int a = 0; a < g.dimension; ++a)
      if (j[a] == 0 || j[a] == n - 1) on_shell = true;
    if (on_shell) m = std::max(m, std::abs(u[i]));
  }
  return m;
}

Field operator+(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field out(a.grid());
  kernels::add(a.values(), b.values(), out.values());
  return out;
}

Field operator-(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field out(a.grid());
  kernels::sub(a.values(), b.values(), out.values());
  return out;
}

Field operator*(double s, const Field& a) {
  Field out(a.grid());
  kernels::scale(a.values(), s, out.values());
  return out;
}

Field multiply(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field out(a.grid());
  kernels::mul(a.values(), b.values(), out.values());
  return out;
}

void axpy_in_place(double a, const Field& x, Field& y) {
  check_same_grid(x, y);
  kernels::axpy(a, x.values(), y.values());
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "chqf i/o assumes a little-endian host");

template <class T>
void write_raw(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
void read_raw(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

void write_chqf(const std::string& path, const Field& u) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("chqf: cannot open " + path + " for writing");
  const char magic[4] = {'C', 'H', 'Q', 'F'};
  out.write(magic, 4);
  write_raw(out, std::uint32_t{1});
  write_raw(out, static_cast<std::uint8_t>(u.grid().dimension));
  write_raw(out, static_cast<std::uint64_t>(u.grid().points_per_axis));
  write_raw(out, u.grid().half_length);
  out.write(reinterpret_cast<const char*>(u.values().data()),
            static_cast<std::streamsize>(u.size() * sizeof(double)));
  if (!out) throw std::runtime_error("chqf: write failed for " + path);
}

Field read_chqf(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("chqf: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "CHQF", 4) != 0)
    throw std::runtime_error("chqf: bad magic in " + path);
  std::uint32_t version = 0;
  read_raw(in, version);
  if (version != 1) throw std::runtime_error("chqf: unsupported version in " + path);
  std::uint8_t dim = 0;
  std::uint64_t n = 0;
  double L = 0.0;
  read_raw(in, dim);
  read_raw(in, n);
  read_raw(in, L);
  if (!in) throw std::runtime_error("chqf: truncated header in " + path);
  const GridSpec g = GridSpec::make(dim, L, static_cast<int>(n));
  std::vector<double> values(g.cell_count());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) throw std::runtime_error("chqf: truncated payload in " + path);
  return Field(g, std::move(values));
}

}  // namespace choq
