#include <doctest.h>

#include <cmath>
#include <numbers>

#include "choq/functionals.hpp"
#include "choq/grid.hpp"
#include "choq/reference.hpp"

using namespace choq;
namespace {

double sup_difference(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace

TEST_CASE("1d nls groundstate closed forms") {
  const auto g = GridSpec::make(1, 30.0, 1024);

  SUBCASE("q = 4 is sqrt(2) sech") {
    const Field u = nls_groundstate(1, 4.0, g);
    const Field ref = sample(g, [](const std::array<double, 3>& x) {
      return std::sqrt(2.0) / std::cosh(x[0]);
    });
    CHECK(sup_difference(u, ref) <= 1e-12);
  }

  SUBCASE("q = 3 is 1.5 sech^2(x/2)") {
    const Field u = nls_groundstate(1, 3.0, g);
    const Field ref = sample(g, [](const std::array<double, 3>& x) {
      const double c = 1.0 / std::cosh(x[0] / 2.0);
      return 1.5 * c * c;
    });
    CHECK(sup_difference(u, ref) <= 1e-12);
  }

  SUBCASE("groundstate solves the equation: residual vanishes") {
    for (double q : {3.0, 4.0, 5.0}) {
      const Field u = nls_groundstate(1, q, g);
      const Field r = residual_nls(u, q);
      CHECK(norm_h1(r) <= 1e-11 * norm_h1(u));
    }
  }

  SUBCASE("profile decay rate is 1") {
    const auto p = nls_groundstate_profile(1, 4.0);
    CHECK(p.decay_rate == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("gamma levels") {
  const auto g = GridSpec::make(1, 30.0, 1024);

  SUBCASE("gamma(1, 4) = 4/3") {
    CHECK(gamma_level(1, 4.0, g) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  }

  SUBCASE("gamma(1, 3) = 1.2") {
    CHECK(gamma_level(1, 3.0, g) == doctest::Approx(1.2).epsilon(1e-9));
  }

  SUBCASE("box-size independence once the tail fits") {
    const auto g2 = GridSpec::make(1, 40.0, 2048);
    CHECK(gamma_level(1, 4.0, g) == doctest::Approx(gamma_level(1, 4.0, g2)).epsilon(1e-10));
  }
}

TEST_CASE("2d shooting groundstate") {
  const auto g = GridSpec::make(2, 12.0, 256);
  const Field u = nls_groundstate(2, 4.0, g);

  SUBCASE("residual is small") {
    // at this box the error is dominated by periodization, about exp(-L)
    const Field r = residual_nls(u, 4.0);
    CHECK(norm_h1(r) <= 2e-5 * norm_h1(u));
  }

  SUBCASE("known amplitude and positivity") {
    // classical central value of the planar cubic groundstate
    double peak = 0.0;
    for (double v : u.values()) peak = std::max(peak, v);
    CHECK(peak == doctest::Approx(2.206210).epsilon(1e-4));
    for (double v : u.values()) CHECK(v >= 0.0);
  }

  SUBCASE("critical mass matches the classical value") {
    const Field u2 = multiply(u, u);
    CHECK(integrate(u2) == doctest::Approx(11.700897).epsilon(1e-6));
  }

  SUBCASE("gamma level stable under box doubling") {
    const auto g2 = GridSpec::make(2, 24.0, 512);
    const double lvl1 = gamma_level(2, 4.0, g);
    const double lvl2 = gamma_level(2, 4.0, g2);
    CHECK(lvl1 == doctest::Approx(lvl2).epsilon(1e-8));
    CHECK(lvl1 == doctest::Approx(5.85044826).epsilon(1e-7));
  }

  SUBCASE("profile decay rate near 1") {
    const auto p = nls_groundstate_profile(2, 4.0);
    CHECK(p.decay_rate == doctest::Approx(1.0).epsilon(2e-2));
  }
}

TEST_CASE("3d shooting groundstate residual") {
  const auto g = GridSpec::make(3, 8.0, 128);
  const Field u = nls_groundstate(3, 4.0, g);
  const Field r = residual_nls(u, 4.0);
  CHECK(norm_h1(r) <= 5e-4 * norm_h1(u));
}

TEST_CASE("limit problem groundstate V and kappa") {
  const auto g = GridSpec::make(1, 30.0, 1024);

  SUBCASE("kappa closed form for p = 2") {
    CHECK(kappa_level(1, 2.0, 1.0, g) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(kappa_level(1, 2.0, 5.0, g) == doctest::Approx(0.05).epsilon(1e-14));
  }

  SUBCASE("kappa(1, 3, 1) = 2/sqrt(5)") {
    CHECK(kappa_level(1, 3.0, 1.0, g) ==
          doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-9));
  }

  SUBCASE("V is a critical point at level kappa") {
    for (double mu : {1.0, 2.5}) {
      const double p = 3.0;
      const Field v = limit_groundstate_V(1, p, mu, g);
      CHECK(action_nls_nonlocal(v, p, mu) ==
            doctest::Approx(kappa_level(1, p, mu, g)).epsilon(1e-8));
      const Field r = residual_nls_nonlocal(v, p, mu);
      CHECK(norm_h1(r) <= 1e-8 * norm_h1(v));
    }
  }

  SUBCASE("mu scaling of kappa") {
    const double p = 3.0, mu = 3.7;
    const double expected = std::pow(mu, -1.0 / (p - 1.0)) * kappa_level(1, p, 1.0, g);
    CHECK(kappa_level(1, p, mu, g) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("linearization spectrum for the q = 4 groundstate") {
  // L = -d^2/dx^2 + 1 - 3 U^2 with U = sqrt(2) sech x has eigenvalues
  // -3 (even ground mode sech^2) and 0 (kernel U', odd); continuous
  // spectrum starts at 1
  const auto g = GridSpec::make(1, 20.0, 512);
  const Field u = nls_groundstate(1, 4.0, g);
  const auto spec = nondegeneracy_spectrum(u, 4.0, 2, 1e-9);

  REQUIRE(spec.eigenvalues.size() == 2);
  CHECK(spec.eigenvalues[0] == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(std::abs(spec.eigenvalues[1]) <= 1e-6);

  SUBCASE("kernel mode aligns with the translation direction") {
    const Field uprime = sample(g, [](const std::array<double, 3>& x) {
      return -std::sqrt(2.0) * std::tanh(x[0]) / std::cosh(x[0]);
    });
    const double cosine = std::abs(inner_l2(spec.eigenvectors[1], uprime)) /
                          (norm_l2(spec.eigenvectors[1]) * norm_l2(uprime));
    CHECK(cosine >= 0.9999);
  }

  SUBCASE("ground mode aligns with sech^2") {
    const Field mode = sample(g, [](const std::array<double, 3>& x) {
      const double c = 1.0 / std::cosh(x[0]);
      return c * c;
    });
    const double cosine = std::abs(inner_l2(spec.eigenvectors[0], mode)) /
                          (norm_l2(spec.eigenvectors[0]) * norm_l2(mode));
    CHECK(cosine >= 0.9999);
  }

  SUBCASE("eigenvectors are L2 normalized and orthogonal") {
    CHECK(norm_l2(spec.eigenvectors[0]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(norm_l2(spec.eigenvectors[1]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(inner_l2(spec.eigenvectors[0], spec.eigenvectors[1])) <= 1e-8);
  }
}

TEST_CASE("reference input validation") {
  const auto g = GridSpec::make(1, 10.0, 64);
  CHECK_THROWS_AS(nls_groundstate(1, 2.0, g), std::invalid_argument);
  CHECK_THROWS_AS(nls_groundstate(2, 4.0, g), std::invalid_argument);
  CHECK_THROWS_AS(limit_groundstate_V(1, 2.0, 1.0, g), std::invalid_argument);
  CHECK_THROWS_AS(limit_groundstate_V(1, 3.0, 0.0, g), std::invalid_argument);
  const Field u = nls_groundstate(1, 4.0, g);
  CHECK_THROWS_AS(nondegeneracy_spectrum(u, 4.0, 0, 1e-8), std::invalid_argument);
}
