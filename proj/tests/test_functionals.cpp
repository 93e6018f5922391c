#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "choq/functionals.hpp"
#include "choq/grid.hpp"
#include "choq/kernels.hpp"
#include "choq/riesz.hpp"

using namespace choq;
namespace {

constexpr double kPi = std::numbers::pi;

Field random_smooth(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto coef = [&rng] { return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0; };
  struct Mode {
    double a, b;
    int m[3];
  };
  std::vector<Mode> modes;
  for (int t = 0; t < 6; ++t)
    modes.push_back({coef(), coef(), {t % 4, (t * 7 + 1) % 4, (t * 3 + 2) % 4}});
  return sample(g, [&](const std::array<double, 3>& x) {
    double v = 0.0;
    for (const auto& mo : modes) {
      double phase = 0.0;
      for (int a = 0; a < 3; ++a) phase += mo.m[a] * x[a];
      v += mo.a * std::cos(kPi * phase) + mo.b * std::sin(kPi * phase);
    }
    return v;
  });
}

Field gaussian_bump(const GridSpec& g, double center, double amp, double sigma) {
  return sample(g, [=](const std::array<double, 3>& x) {
    double r2 = (x[0] - center) * (x[0] - center);
    for (int a = 1; a < 3; ++a) r2 += x[a] * x[a];
    return amp * std::exp(-r2 / (2.0 * sigma * sigma));
  });
}

// central finite difference of a functional along direction v
template <typename F>
double fd_directional(const F& J, const Field& u, const Field& v, double eps) {
  Field up = u, um = u;
  axpy_in_place(eps, v, up);
  axpy_in_place(-eps, v, um);
  return (J(up) - J(um)) / (2.0 * eps);
}

// golden-section maximizer of a unimodal scalar function on [lo, hi]
template <typename F>
double golden_max(const F& f, double lo, double hi) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 120; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ChoquardParams::make(1, 2.0, 0.0, true), std::invalid_argument);
  CHECK_THROWS_AS(ChoquardParams::make(1, 2.0, 1.0, true), std::invalid_argument);
  CHECK_THROWS_AS(ChoquardParams::make(2, 1.5, 1.0, true), std::invalid_argument);
  CHECK_THROWS_AS(ChoquardParams::make(4, 2.0, 0.5, true), std::invalid_argument);
  CHECK_NOTHROW(ChoquardParams::make(2, 2.0, 1.3, false));
}

TEST_CASE("local actions match closed forms on constant fields") {
  const auto g = GridSpec::make(1, 5.0, 64);
  const double c = 0.7, vol = 2.0 * g.half_length;
  Field u = sample(g, [=](const std::array<double, 3>&) { return c; });

  const double q = 4.0;
  const double j_nls = 0.5 * c * c * vol - std::pow(c, q) / q * vol;
  CHECK(action_nls(u, q) == doctest::Approx(j_nls).epsilon(1e-13));

  const double p = 3.0, mu = 0.8;
  const double mass_p = std::pow(c, p) * vol;
  const double j_psi = 0.5 * c * c * vol - mu / (2.0 * p) * mass_p * mass_p;
  CHECK(action_nls_nonlocal(u, p, mu) == doctest::Approx(j_psi).epsilon(1e-13));
}

TEST_CASE("choquard action homogeneity in the scaling parameter") {
  const auto g = GridSpec::make(1, 8.0, 128);
  const Field u = random_smooth(g, 11);
  const auto params = ChoquardParams::make(1, 2.5, 0.8, true);
  const double a = norm_h1(u) * norm_h1(u);
  const double b = riesz_energy(u, params.p, params.kernel());
  for (double t : {0.3, 1.0, 1.7, 2.4}) {
    const double expected =
        0.5 * t * t * a - std::pow(t, 2.0 * params.p) / (2.0 * params.p) * b;
    CHECK(action_choquard(t * u, params) == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("residuals are the H1 gradients of the actions") {
  const auto g = GridSpec::make(1, 6.0, 128);
  const double eps = 1e-6;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Field u = random_smooth(g, seed);
    const Field v = random_smooth(g, seed + 100);
    {
      const auto params = ChoquardParams::make(1, 2.0, 0.5, true);
      const auto J = [&](const Field& w) { return action_choquard(w, params); };
      const double exact = h1_inner(residual_choquard(u, params), v);
      const double fd = fd_directional(J, u, v, eps);
      CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
    }
    {
      const auto params = ChoquardParams::make(1, 2.5, 0.9, false);
      const auto J = [&](const Field& w) { return action_choquard(w, params); };
      const double exact = h1_inner(residual_choquard(u, params), v);
      const double fd = fd_directional(J, u, v, eps);
      CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
    }
    {
      const double q = 4.0;
      const auto J = [&](const Field& w) { return action_nls(w, q); };
      const double exact = h1_inner(residual_nls(u, q), v);
      const double fd = fd_directional(J, u, v, eps);
      CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
    }
    {
      const double p = 3.0, mu = 1.4;
      const auto J = [&](const Field& w) { return action_nls_nonlocal(w, p, mu); };
      const double exact = h1_inner(residual_nls_nonlocal(u, p, mu), v);
      const double fd = fd_directional(J, u, v, eps);
      CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
    }
  }
}

TEST_CASE("2d residual consistency") {
  const auto g = GridSpec::make(2, 4.0, 32);
  const Field u = random_smooth(g, 7);
  const Field v = random_smooth(g, 21);
  const auto params = ChoquardParams::make(2, 2.0, 1.1, true);
  const auto J = [&](const Field& w) { return action_choquard(w, params); };
  const double exact = h1_inner(residual_choquard(u, params), v);
  const double fd = fd_directional(J, u, v, 1e-6);
  CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("nehari scale maximizes the action along the ray") {
  const auto g = GridSpec::make(1, 8.0, 128);
  const Field u = gaussian_bump(g, 0.5, 1.3, 1.0);

  SUBCASE("choquard") {
    const auto params = ChoquardParams::make(1, 2.0, 0.5, true);
    const double t = nehari_scale(u, params);
    const double a = norm_h1(u) * norm_h1(u);
    const double b = riesz_energy(u, params.p, params.kernel());
    CHECK(std::abs(t * t * a - std::pow(t, 2.0 * params.p) * b) <= 1e-10 * t * t * a);
    const auto J = [&](double s) { return action_choquard(s * u, params); };
    const double t_ref = golden_max(J, 0.05 * t, 8.0 * t);
    CHECK(t == doctest::Approx(t_ref).epsilon(1e-6));
    CHECK_THROWS_AS(nehari_scale(Field(g), params), std::invalid_argument);
  }

  SUBCASE("nls nonlocal") {
    const double p = 3.0, mu = 0.7;
    const double t = nehari_scale_psi(u, p, mu);
    const auto J = [&](double s) { return action_nls_nonlocal(s * u, p, mu); };
    const double t_ref = golden_max(J, 0.05 * t, 8.0 * t);
    CHECK(t == doctest::Approx(t_ref).epsilon(1e-6));
  }
}

TEST_CASE("psi action scaling identity in mu") {
  const auto g = GridSpec::make(1, 6.0, 128);
  const Field u = gaussian_bump(g, -0.3, 1.1, 0.9);
  const double p = 3.0, mu = 2.3;
  const double lhs = action_nls_nonlocal(std::pow(mu, -1.0 / (2.0 * p - 2.0)) * u, p, mu);
  const double rhs = std::pow(mu, -1.0 / (p - 1.0)) * action_nls_nonlocal(u, p, 1.0);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("nodal scales: symmetric two-bump field") {
  const auto g = GridSpec::make(1, 12.0, 256);
  const Field plus = gaussian_bump(g, 3.0, 1.0, 1.0);
  const Field minus = gaussian_bump(g, -3.0, 1.0, 1.0);
  const Field u = plus - minus;
  const auto params = ChoquardParams::make(1, 2.0, 0.5, true);

  const auto ns = nodal_scales(u, params);
  CHECK(std::abs(ns.t - ns.s) <= 1e-10 * ns.t);
  const double a_plus = norm_h1(positive_part(u)) * norm_h1(positive_part(u));
  CHECK(std::abs(ns.defect_plus) <= 1e-9 * a_plus);
  CHECK(std::abs(ns.defect_minus) <= 1e-9 * a_plus);

  // recombined field sits on the nodal constraint set
  Field w = ns.t * positive_part(u);
  axpy_in_place(ns.s, negative_part(u), w);
  const auto defects = nehari_nodal_defects(w, params);
  const double scale = norm_h1(w) * norm_h1(w);
  CHECK(std::abs(defects.first) <= 1e-9 * scale);
  CHECK(std::abs(defects.second) <= 1e-9 * scale);
}

TEST_CASE("nodal scales match a direct two-parameter maximization") {
  const auto g = GridSpec::make(1, 12.0, 256);
  const Field u = gaussian_bump(g, 3.0, 1.0, 1.0) - gaussian_bump(g, -3.5, 0.7, 1.2);
  const auto params = ChoquardParams::make(1, 2.0, 0.5, true);
  const double p = params.p;
  const auto ns = nodal_scales(u, params);

  const Field up = positive_part(u);
  const Field um = negative_part(u);

  SUBCASE("against the fibered functional assembled from first principles") {
    Field pp(g), pm(g);
    kernels::abs_pow(up.values(), p, pp.values());
    kernels::abs_pow(um.values(), p, pm.values());
    const double ap = h1_inner(up, up), am = h1_inner(um, um);
    const auto kernel = params.kernel();
    const double bpp = cross_riesz_energy(pp, pp, kernel);
    const double bpm = cross_riesz_energy(pp, pm, kernel);
    const double bmm = cross_riesz_energy(pm, pm, kernel);
    const auto F = [&](double tau, double sig) {
      return 0.5 * std::pow(tau, 2.0 / p) * ap + 0.5 * std::pow(sig, 2.0 / p) * am -
             (tau * tau * bpp + 2.0 * tau * sig * bpm + sig * sig * bmm) / (2.0 * p);
    };
    double tau = 1.0, sig = 1.0;
    for (int round = 0; round < 80; ++round) {
      tau = golden_max([&](double x) { return F(x, sig); }, 1e-3, 50.0);
      sig = golden_max([&](double x) { return F(tau, x); }, 1e-3, 50.0);
    }
    CHECK(ns.t == doctest::Approx(std::pow(tau, 1.0 / p)).epsilon(1e-7));
    CHECK(ns.s == doctest::Approx(std::pow(sig, 1.0 / p)).epsilon(1e-7));
  }

  SUBCASE("against the recombined action, up to the discrete kink term") {
    // the fibered model drops the H1 cross term of the sign parts, an O(h)
    // discretization artifact, so the match is looser here
    const auto J = [&](double t, double s) {
      Field w = t * up;
      axpy_in_place(s, um, w);
      return action_choquard(w, params);
    };
    double t = 1.0, s = 1.0;
    for (int round = 0; round < 60; ++round) {
      t = golden_max([&](double x) { return J(x, s); }, 0.05, 20.0);
      s = golden_max([&](double x) { return J(t, x); }, 0.05, 20.0);
    }
    CHECK(ns.t == doctest::Approx(t).epsilon(2e-4));
    CHECK(ns.s == doctest::Approx(s).epsilon(2e-4));
    CHECK(J(ns.t, ns.s) >= J(t, s) - 1e-7 * std::abs(J(t, s)));
    CHECK(J(ns.t, ns.s) >= J(1.0, 1.0));
  }
}

TEST_CASE("nodal defect sum equals the full nehari defect") {
  const auto g = GridSpec::make(1, 10.0, 256);
  const Field u = gaussian_bump(g, 2.0, 1.2, 0.8) - gaussian_bump(g, -2.5, 0.9, 1.1);
  const auto params = ChoquardParams::make(1, 2.0, 0.7, true);
  const auto defects = nehari_nodal_defects(u, params);

  const double a_plus = norm_h1(positive_part(u)) * norm_h1(positive_part(u));
  const double a_minus = norm_h1(negative_part(u)) * norm_h1(negative_part(u));
  const double d_full = riesz_energy(u, params.p, params.kernel());
  const double expected = a_plus + a_minus - d_full;
  CHECK(defects.first + defects.second == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("nodal scales reject one-signed fields") {
  const auto g = GridSpec::make(1, 8.0, 64);
  const Field u = gaussian_bump(g, 0.0, 1.0, 1.0);
  const auto params = ChoquardParams::make(1, 2.0, 0.5, true);
  CHECK_THROWS_AS(nodal_scales(u, params), std::invalid_argument);
  CHECK_THROWS_AS(nodal_scales(-1.0 * u, params), std::invalid_argument);
}
