#include "choq/riesz.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "choq/kernels.hpp"
#include "fft.hpp"

namespace choq {
namespace {

constexpr double kPi = std::numbers::pi;

void validate(int dimension, double alpha) {
  if (dimension < 1 || dimension > 3)
    throw std::invalid_argument("riesz: dimension must be 1, 2 or 3");
  if (!(alpha > 0.0) || !(alpha < dimension))
    throw std::invalid_argument("riesz: alpha must satisfy 0 < alpha < dimension");
}

double unit_ball_volume(int dimension) {
  switch (dimension) {
    case 1: return 2.0;
    case 2: return kPi;
    default: return 4.0 * kPi / 3.0;
  }
}

// average of |z|^{alpha-N} over the cell [-h/2, h/2)^N
double singular_cell_average(int dimension, double alpha, double h) {
  if (dimension == 1) return std::pow(h / 2.0, alpha - 1.0) / alpha;

  // midpoint quadrature over 17^N subcells; the central subcell (where the
  // midpoint rule would hit the singularity) integrates the kernel over the
  // ball of equal volume instead
  constexpr int kSub = 17;
  const double a = h / kSub;
  const double vn = unit_ball_volume(dimension);
  const double rho = a * std::pow(1.0 / vn, 1.0 / dimension);
  const double center = dimension * vn * std::pow(rho, alpha) / alpha;

  double total = 0.0;
  const int half = kSub / 2;
  if (dimension == 2) {
    for (int i = -half; i <= half; ++i)
      for (int j = -half; j <= half; ++j) {
        if (i == 0 && j == 0) continue;
        const double r = std::hypot(i * a, j * a);
        total += std::pow(r, alpha - 2.0) * a * a;
      }
  } else {
    for (int i = -half; i <= half; ++i)
      for (int j = -half; j <= half; ++j)
        for (int l = -half; l <= half; ++l) {
          if (i == 0 && j == 0 && l == 0) continue;
          const double r = std::hypot(i * a, j * a, l * a);
          total += std::pow(r, alpha - 3.0) * a * a * a;
        }
  }
  return (total + center) / std::pow(h, dimension);
}

struct KernelKey {
  int dimension;
  int points;
  std::uint64_t half_length_bits;
  std::uint64_t alpha_bits;
  bool normalized;

  auto tie() const {
    return std::tie(dimension, points, half_length_bits, alpha_bits, normalized);
  }
  bool operator<(const KernelKey& o) const { return tie() < o.tie(); }
};

std::uint64_t bits_of(double v) {
  std::uint64_t b;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

struct KernelCache {
  std::mutex mutex;
  std::map<KernelKey, std::shared_ptr<const std::vector<std::complex<double>>>> entries;
};

KernelCache& kernel_cache() {
  static KernelCache c;
  return c;
}

// DFT of the kernel sampled on the padded (2n per axis) displacement lattice
std::shared_ptr<const std::vector<std::complex<double>>> padded_kernel_spectrum(
    const GridSpec& g, const RieszKernelSpec& spec) {
  const KernelKey key{g.dimension, g.points_per_axis, bits_of(g.half_length),
                      bits_of(spec.alpha), spec.normalized};
  {
    std::lock_guard lock(kernel_cache().mutex);
    if (auto it = kernel_cache().entries.find(key); it != kernel_cache().entries.end())
      return it->second;
  }

  const int m = 2 * g.points_per_axis;
  const double h = g.spacing();
  const double expo = spec.alpha - g.dimension;
  const double amp = spec.normalized ? riesz_constant(g.dimension, spec.alpha) : 1.0;
  const double center = amp * singular_cell_average(g.dimension, spec.alpha, h);

  std::size_t total = 1;
  for (int a = 0; a < g.dimension; ++a) total *= static_cast<std::size_t>(m);
  std::vector<std::complex<double>> k(total);
  int j[3] = {0, 0, 0};
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    for (int a = g.dimension - 1; a >= 0; --a) {
      j[a] = static_cast<int>(rest % m);
      rest /= m;
    }
    double r2 = 0.0;
    for (int a = 0; a < g.dimension; ++a) {
      const int d = j[a] < m / 2 ? j[a] : j[a] - m;  // signed displacement index
      const double z = d * h;
      r2 += z * z;
    }
    k[i] = r2 == 0.0 ? center : amp * std::pow(std::sqrt(r2), expo);
  }

  std::vector<std::complex<double>> khat(total);
  const std::vector<int> dims(static_cast<std::size_t>(g.dimension), m);
  detail::dft(dims, k.data(), khat.data(), -1);

  auto entry = std::make_shared<const std::vector<std::complex<double>>>(std::move(khat));
  std::lock_guard lock(kernel_cache().mutex);
  auto [it, inserted] = kernel_cache().entries.emplace(key, entry);
  return it->second;  // first writer wins; concurrent builders converge
}

}  // namespace

RieszKernelSpec RieszKernelSpec::make(int dimension, double alpha, bool normalized) {
  validate(dimension, alpha);
  return RieszKernelSpec{dimension, alpha, normalized};
}

double riesz_constant(int dimension, double alpha) {
  validate(dimension, alpha);
  const double lg = std::lgamma((dimension - alpha) / 2.0) - std::lgamma(alpha / 2.0) -
                    (dimension / 2.0) * std::log(kPi) - alpha * std::log(2.0);
  return std::exp(lg);
}

double riesz_normalization_ratio(int dimension, double alpha) {
  validate(dimension, alpha);
  const double lg = std::lgamma(alpha / 2.0) + (dimension / 2.0) * std::log(kPi) +
                    alpha * std::log(2.0) - std::lgamma((dimension - alpha) / 2.0);
  return std::exp(lg);
}

double hls_constant(int dimension, double alpha) {
  validate(dimension, alpha);
  const double n = dimension;
  const double lg = std::lgamma((n - alpha) / 2.0) - alpha * std::log(2.0) -
                    (alpha / 2.0) * std::log(kPi) - std::lgamma((n + alpha) / 2.0) +
                    (alpha / n) * (std::lgamma(n) - std::lgamma(n / 2.0));
  return std::exp(lg);
}

double hls_constant_unnormalized(int dimension, double alpha) {
  validate(dimension, alpha);
  const double n = dimension;
  const double lg = ((n - alpha) / 2.0) * std::log(kPi) + std::lgamma(alpha / 2.0) -
                    std::lgamma((n + alpha) / 2.0) +
                    (alpha / n) * (std::lgamma(n) - std::lgamma(n / 2.0));
  return std::exp(lg);
}

Field riesz_convolve(const Field& f, const RieszKernelSpec& kernel) {
  const GridSpec& g = f.grid();
  if (kernel.dimension != g.dimension)
    throw std::invalid_argument("riesz_convolve: kernel/grid dimension mismatch");
  validate(kernel.dimension, kernel.alpha);

  const int n = g.points_per_axis;
  const int m = 2 * n;
  std::size_t total = 1;
  for (int a = 0; a < g.dimension; ++a) total *= static_cast<std::size_t>(m);

  // zero-pad the field into the low corner of the doubled lattice
  std::vector<std::complex<double>> fp(total, {0.0, 0.0});
  int j[3] = {0, 0, 0};
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t rest = i;
    for (int a = g.dimension - 1; a >= 0; --a) {
      j[a] = static_cast<int>(rest % n);
      rest /= n;
    }
    std::size_t big = 0;
    for (int a = 0; a < g.dimension; ++a) big = big * m + static_cast<std::size_t>(j[a]);
    fp[big] = f[i];
  }

  const std::vector<int> dims(static_cast<std::size_t>(g.dimension), m);
  std::vector<std::complex<double>> fhat(total);
  detail::dft(dims, fp.data(), fhat.data(), -1);

  const auto khat = padded_kernel_spectrum(g, kernel);
  kernels::mul_complex(fhat, *khat, fhat);

  std::vector<std::complex<double>> conv(total);
  detail::dft(dims, fhat.data(), conv.data(), +1);

  Field out(g);
  const double scale = g.cell_volume() / static_cast<double>(total);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t rest = i;
    for (int a = g.dimension - 1; a >= 0; --a) {
      j[a] = static_cast<int>(rest % n);
      rest /= n;
    }
    std::size_t big = 0;
    for (int a = 0; a < g.dimension; ++a) big = big * m + static_cast<std::size_t>(j[a]);
    out[i] = conv[big].real() * scale;
  }
  return out;
}

double riesz_energy(const Field& u, double p, const RieszKernelSpec& kernel) {
  if (!(p >= 1.0)) throw std::invalid_argument("riesz_energy: p must be >= 1");
  Field fp(u.grid());
  kernels::abs_pow(u.values(), p, fp.values());
  return inner_l2(riesz_convolve(fp, kernel), fp);
}

double cross_riesz_energy(const Field& f, const Field& g, const RieszKernelSpec& kernel) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("cross_riesz_energy: mismatched grids");
  return inner_l2(riesz_convolve(f, kernel), g);
}

double cross_riesz_energy_offset(const Field& f, const Field& g,
                                 const RieszKernelSpec& kernel,
                                 std::span<const double> offset) {
  const GridSpec& gs = f.grid();
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("cross_riesz_energy_offset: mismatched grids");
  if (std::ssize(offset) != gs.dimension)
    throw std::invalid_argument("cross_riesz_energy_offset: offset dimension mismatch");
  validate(kernel.dimension, kernel.alpha);

  const double h = gs.spacing();
  const double expo = kernel.alpha - gs.dimension;
  const double amp =
      kernel.normalized ? riesz_constant(gs.dimension, kernel.alpha) : 1.0;
  const double center = amp * singular_cell_average(gs.dimension, kernel.alpha, h);
  const double tiny = 1e-14 * h;

  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0.0) continue;
    const auto xi = g.point(i);
    double row = 0.0;
    for (std::size_t l = 0; l < f.size(); ++l) {
      if (f[l] == 0.0) continue;
      const auto yl = f.point(l);
      double r2 = 0.0;
      for (int a = 0; a < gs.dimension; ++a) {
        const double z = xi[a] - yl[a] + offset[a];
        r2 += z * z;
      }
      const double r = std::sqrt(r2);
      row += f[l] * (r < tiny ? center : amp * std::pow(r, expo));
    }
    acc += g[i] * row;
  }
  double w = 1.0;
  for (int a = 0; a < 2 * gs.dimension; ++a) w *= h;
  return acc * w;
}

void clear_riesz_kernel_cache() {
  std::lock_guard lock(kernel_cache().mutex);
  kernel_cache().entries.clear();
}

}  // namespace choq
