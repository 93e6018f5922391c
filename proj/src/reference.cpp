#include "choq/reference.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "choq/functionals.hpp"
#include "choq/kernels.hpp"

namespace choq {
namespace {

// ---------------------------------------------------------------- shooting

struct OdeState {
  double u, w;  // value and radial derivative
};

// u'' + (N-1)/r u' = u - u^{q-1}
OdeState rhs(double r, const OdeState& s, int dim, double q) {
  const double nonlin = s.u > 0.0 ? std::pow(s.u, q - 1.0)
                                  : -std::pow(-s.u, q - 1.0);
  return {s.w, s.u - nonlin - (dim - 1) / r * s.w};
}

OdeState rk4_step(double r, const OdeState& s, double h, int dim, double q) {
  const OdeState k1 = rhs(r, s, dim, q);
  const OdeState k2 = rhs(r + h / 2, {s.u + h / 2 * k1.u, s.w + h / 2 * k1.w}, dim, q);
  const OdeState k3 = rhs(r + h / 2, {s.u + h / 2 * k2.u, s.w + h / 2 * k2.w}, dim, q);
  const OdeState k4 = rhs(r + h, {s.u + h * k3.u, s.w + h * k3.w}, dim, q);
  return {s.u + h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
          s.w + h / 6 * (k1.w + 2 * k2.w + 2 * k3.w + k4.w)};
}

// integrate from the series start; returns +1 if u crosses zero (initial
// value too high), -1 if u turns back up while positive (too low),
// 0 if it stays decreasing and positive up to r_max
int classify_shot(double b, int dim, double q, double r_max) {
  const double h = 1.0 / 2048.0;
  double r = 1e-3;
  const double c = (b - std::pow(b, q - 1.0)) / (2.0 * dim);
  OdeState s{b + c * r * r, 2.0 * c * r};
  while (r < r_max) {
    s = rk4_step(r, s, h, dim, q);
    r += h;
    if (s.u <= 0.0) return +1;
    if (s.w >= 0.0 && s.u < b) return -1;
  }
  return 0;
}

struct ShotResult {
  std::vector<double> radii;
  std::vector<double> values;
};

ShotResult integrate_shot(double b, int dim, double q, double r_max) {
  const double h = 1.0 / 2048.0;
  ShotResult out;
  out.radii.reserve(static_cast<std::size_t>(r_max / h) + 2);
  out.values.reserve(out.radii.capacity());
  double r = 1e-3;
  const double c = (b - std::pow(b, q - 1.0)) / (2.0 * dim);
  OdeState s{b + c * r * r, 2.0 * c * r};
  out.radii.push_back(0.0);
  out.values.push_back(b);
  out.radii.push_back(r);
  out.values.push_back(s.u);
  while (r < r_max && s.u > 0.0 && s.w < 0.0) {
    s = rk4_step(r, s, h, dim, q);
    r += h;
    out.radii.push_back(r);
    out.values.push_back(s.u);
  }
  return out;
}

double fit_decay_rate(const RadialProfile& p, int dim) {
  // slope of log(u r^{(N-1)/2}) on the stretch where u/u(0) is in [1e-8, 1e-4]
  const double u0 = p.values.front();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 1; i < p.radii.size(); ++i) {
    const double rel = p.values[i] / u0;
    if (rel > 1e-4 || rel < 1e-8 || p.values[i] <= 0.0) continue;
    const double x = p.radii[i];
    const double y = std::log(p.values[i]) + 0.5 * (dim - 1) * std::log(x);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 8) return 0.0;
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return -slope;
}

RadialProfile profile_1d(double q, double r_max) {
  const double amp = std::pow(q / 2.0, 1.0 / (q - 2.0));
  const double rate = (q - 2.0) / 2.0;
  const double ex = 2.0 / (q - 2.0);
  RadialProfile p;
  const double h = 1.0 / 512.0;
  const auto count = static_cast<std::size_t>(r_max / h) + 1;
  p.radii.resize(count);
  p.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    p.radii[i] = i * h;
    p.values[i] = amp * std::pow(1.0 / std::cosh(rate * p.radii[i]), ex);
  }
  p.decay_rate = fit_decay_rate(p, 1);
  return p;
}

RadialProfile profile_shooting(int dim, double q, double r_max) {
  const double r_classify = 40.0;
  double lo = 1.0 + 1e-9, hi = 2.0;
  while (classify_shot(hi, dim, q, r_classify) != +1) {
    hi *= 2.0;
    if (hi > 1e6) throw std::runtime_error("shooting: no overshoot bracket found");
  }
  if (classify_shot(lo, dim, q, r_classify) != -1)
    throw std::runtime_error("shooting: lower bracket is not an undershoot");
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const int c = classify_shot(mid, dim, q, r_classify);
    if (c == +1)
      hi = mid;
    else
      lo = mid;
  }
  const double b = 0.5 * (lo + hi);

  const ShotResult shot = integrate_shot(b, dim, q, r_classify);

  // keep the integrated solution while it is trustworthy, then continue with
  // the asymptotic tail u ~ C r^{-(N-1)/2} e^{-r}
  std::size_t match = shot.values.size() - 1;
  for (std::size_t i = 0; i < shot.values.size(); ++i)
    if (shot.values[i] < 1e-6 * b) {
      match = i;
      break;
    }
  const double rm = shot.radii[match];
  const double um = shot.values[match];

  RadialProfile p;
  const double h = 1.0 / 512.0;
  const auto count = static_cast<std::size_t>(r_max / h) + 1;
  p.radii.resize(count);
  p.values.resize(count);
  const double hi_step = 1.0 / 2048.0;  // shot sample spacing
  for (std::size_t i = 0; i < count; ++i) {
    const double r = i * h;
    p.radii[i] = r;
    if (r < rm) {
      // shot samples are uniform after the r = 0 entry: radii[1 + k] = 1e-3 + k h
      const double pos = (r - 1e-3) / hi_step;
      if (pos <= 0.0) {
        p.values[i] = b;
      } else {
        const auto idx = static_cast<std::size_t>(pos);
        const double fr = pos - idx;
        const std::size_t base = idx + 1;
        if (base + 1 < shot.values.size())
          p.values[i] = shot.values[base] * (1.0 - fr) + shot.values[base + 1] * fr;
        else
          p.values[i] = shot.values.back();
      }
    } else {
      p.values[i] = um * std::pow(r / rm, -0.5 * (dim - 1)) * std::exp(-(r - rm));
    }
  }
  p.values[0] = b;
  p.decay_rate = fit_decay_rate(p, dim);
  return p;
}

struct ProfileKey {
  int dim;
  std::uint64_t q_bits;
  std::uint64_t rmax_bits;
  bool operator<(const ProfileKey& o) const {
    return std::tie(dim, q_bits, rmax_bits) < std::tie(o.dim, o.q_bits, o.rmax_bits);
  }
};

std::uint64_t bits_of(double v) {
  std::uint64_t b;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

const RadialProfile& cached_profile(int dim, double q, double r_max) {
  static std::mutex mutex;
  static std::map<ProfileKey, RadialProfile> cache;
  std::lock_guard lock(mutex);
  const ProfileKey key{dim, bits_of(q), bits_of(r_max)};
  auto it = cache.find(key);
  if (it == cache.end()) {
    RadialProfile p = dim == 1 ? profile_1d(q, r_max) : profile_shooting(dim, q, r_max);
    it = cache.emplace(key, std::move(p)).first;
  }
  return it->second;
}

double interpolate_profile(const RadialProfile& p, double r) {
  const double h = p.radii[1] - p.radii[0];
  const double pos = r / h;
  if (pos >= static_cast<double>(p.values.size() - 1)) return 0.0;
  // 4-point Lagrange on the uniform profile grid
  auto idx = static_cast<std::ptrdiff_t>(pos);
  std::ptrdiff_t i0 = idx - 1;
  i0 = std::max<std::ptrdiff_t>(0, std::min<std::ptrdiff_t>(
                                       i0, static_cast<std::ptrdiff_t>(p.values.size()) - 4));
  const double t = pos - static_cast<double>(i0);
  const double v0 = p.values[i0], v1 = p.values[i0 + 1], v2 = p.values[i0 + 2],
               v3 = p.values[i0 + 3];
  const double c0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
  const double c1 = t * (t - 2) * (t - 3) / 2.0;
  const double c2 = -t * (t - 1) * (t - 3) / 2.0;
  const double c3 = t * (t - 1) * (t - 2) / 6.0;
  return c0 * v0 + c1 * v1 + c2 * v2 + c3 * v3;
}

void validate_q(double q) {
  if (!(q > 2.0)) throw std::invalid_argument("nls groundstate: q must exceed 2");
}

}  // namespace

RadialProfile nls_groundstate_profile(int dimension, double q) {
  validate_q(q);
  if (dimension < 1 || dimension > 3)
    throw std::invalid_argument("nls groundstate: dimension must be 1, 2 or 3");
  return cached_profile(dimension, q, 60.0);
}

Field nls_groundstate(int dimension, double q, const GridSpec& grid) {
  validate_q(q);
  if (grid.dimension != dimension)
    throw std::invalid_argument("nls groundstate: grid dimension mismatch");
  if (dimension == 1) {
    const double amp = std::pow(q / 2.0, 1.0 / (q - 2.0));
    const double rate = (q - 2.0) / 2.0;
    const double ex = 2.0 / (q - 2.0);
    return sample(grid, [=](const std::array<double, 3>& x) {
      return amp * std::pow(1.0 / std::cosh(rate * x[0]), ex);
    });
  }
  const double r_needed = grid.half_length * std::sqrt(double(dimension)) + 2.0;
  const RadialProfile& p = cached_profile(dimension, q, std::max(60.0, r_needed));
  return sample(grid, [&](const std::array<double, 3>& x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return interpolate_profile(p, r);
  });
}

double gamma_level(int dimension, double q, const GridSpec& grid) {
  return action_nls(nls_groundstate(dimension, q, grid), q);
}

Field limit_groundstate_V(int dimension, double p, double mu, const GridSpec& grid) {
  if (!(p > 2.0))
    throw std::invalid_argument("limit groundstate V: p must exceed 2");
  if (!(mu > 0.0)) throw std::invalid_argument("limit groundstate V: mu must be positive");
  const Field u = nls_groundstate(dimension, p, grid);
  Field up(grid);
  kernels::abs_pow(u.values(), p, up.values());
  const double c = std::pow(mu * integrate(up), -1.0 / (2.0 * p - 2.0));
  return c * u;
}

double kappa_level(int dimension, double p, double mu, const GridSpec& grid) {
  if (!(p >= 2.0) || !(mu > 0.0))
    throw std::invalid_argument("kappa level: need p >= 2 and mu > 0");
  if (p == 2.0) return 0.25 / mu;
  const double gamma = gamma_level(dimension, p, grid);
  const double base = gamma / (0.5 - 1.0 / p);
  return (0.5 - 0.5 / p) * std::pow(mu, -1.0 / (p - 1.0)) *
         std::pow(base, (p - 2.0) / (p - 1.0));
}

namespace {

void orthonormalize(std::vector<Field>& basis) {
  std::vector<Field> kept;
  for (auto& v : basis) {
    Field w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& k : kept) axpy_in_place(-inner_l2(k, w), k, w);
    const double nrm = norm_l2(w);
    if (nrm > 1e-10) kept.push_back((1.0 / nrm) * w);
  }
  basis = std::move(kept);
}

}  // namespace

SpectrumResult nondegeneracy_spectrum(const Field& U, double q, int k, double tol) {
  validate_q(q);
  if (k < 1 || k > 8) throw std::invalid_argument("spectrum: k must be in [1, 8]");
  const GridSpec& g = U.grid();

  Field w(g);
  kernels::abs_pow(U.values(), q - 2.0, w.values());
  kernels::scale(w.values(), q - 1.0, w.values());
  const auto apply_L = [&](const Field& v) {
    constexpr double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
    Field lv = apply_fourier_symbol(v, [](double xi2) { return 1.0 + four_pi2 * xi2; });
    return lv - multiply(w, v);
  };

  // deterministic seed block: U times low-order polynomials of the coordinates
  const int block = std::min(k + 2, 10);
  std::vector<Field> X;
  for (int j = 0; j < block; ++j) {
    Field v = sample(g, [&](const std::array<double, 3>& x) {
      switch (j) {
        case 0: return 1.0;
        case 1: return x[0];
        case 2: return x[0] * x[0] - 1.0;
        case 3: return g.dimension > 1 ? x[1] : x[0] * x[0] * x[0] - 3.0 * x[0];
        default: return std::cos(0.37 * (j - 3) * x[0]) + (g.dimension > 1 ? x[1] * x[1] : 0.0);
      }
    });
    X.push_back(multiply(v, U));
  }
  orthonormalize(X);

  std::vector<Field> P;  // previous iterate block
  SpectrumResult result;
  const int max_iterations = 400;

  for (int it = 0; it < max_iterations; ++it) {
    std::vector<Field> AX;
    AX.reserve(X.size());
    for (const auto& x : X) AX.push_back(apply_L(x));

    std::vector<double> theta(X.size());
    bool converged = X.size() >= static_cast<std::size_t>(k);
    std::vector<Field> R;
    for (std::size_t j = 0; j < X.size(); ++j) {
      theta[j] = inner_l2(X[j], AX[j]);
      Field r = AX[j] - theta[j] * X[j];
      if (j < static_cast<std::size_t>(k) &&
          norm_l2(r) > tol * std::max(1.0, std::abs(theta[j])))
        converged = false;
      R.push_back(std::move(r));
    }
    if (converged) {
      result.iterations = it;
      for (int j = 0; j < k; ++j) {
        result.eigenvalues.push_back(theta[j]);
        result.eigenvectors.push_back(X[j]);
      }
      return result;
    }

    // subspace: current block, preconditioned residuals, previous block
    std::vector<Field> S = X;
    for (const auto& r : R) S.push_back(helmholtz_inverse(r));
    for (const auto& p : P) S.push_back(p);
    orthonormalize(S);

    const auto m = static_cast<Eigen::Index>(S.size());
    std::vector<Field> AS;
    AS.reserve(S.size());
    for (const auto& s : S) AS.push_back(apply_L(s));
    Eigen::MatrixXd A(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i; j < m; ++j) {
        A(i, j) = inner_l2(S[i], AS[j]);
        A(j, i) = A(i, j);
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);

    P = X;
    std::vector<Field> Xn;
    const auto nb = std::min<Eigen::Index>(block, m);
    for (Eigen::Index c = 0; c < nb; ++c) {
      Field v(g);
      for (Eigen::Index i = 0; i < m; ++i) axpy_in_place(eig.eigenvectors()(i, c), S[i], v);
      Xn.push_back(std::move(v));
    }
    X = std::move(Xn);
    orthonormalize(X);
  }
  throw std::runtime_error("nondegeneracy_spectrum: block iteration did not converge");
}

}  // namespace choq
