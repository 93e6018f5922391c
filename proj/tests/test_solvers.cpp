#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "choq/functionals.hpp"
#include "choq/grid.hpp"
#include "choq/reference.hpp"
#include "choq/solvers.hpp"

using namespace choq;
namespace {

Field gaussian_bump(const GridSpec& g, double center, double amp, double sigma) {
  return sample(g, [=](const std::array<double, 3>& x) {
    double r2 = (x[0] - center) * (x[0] - center);
    for (int a = 1; a < 3; ++a) r2 += x[a] * x[a];
    return amp * std::exp(-r2 / (2.0 * sigma * sigma));
  });
}

void check_monotone_history(const std::vector<double>& history) {
  for (std::size_t i = 1; i < history.size(); ++i) {
    const double slack = 1e-13 * std::max(1.0, std::abs(history[i - 1]));
    CHECK(history[i] <= history[i - 1] + slack);
  }
}

}  // namespace

TEST_CASE("groundstate solve at moderate alpha") {
  const auto g = GridSpec::make(1, 30.0, 1024);
  const auto params = ChoquardParams::make(1, 2.0, 0.5, true);
  const Field init = gaussian_bump(g, 0.0, 1.0, 1.5);

  const auto result = solve_groundstate(params, init);

  CHECK(result.residual_h1 <= 1e-9);
  CHECK(result.energy > 0.0);
  CHECK(result.iterations > 0);
  REQUIRE(result.nehari_defects.size() == 1);
  const double a = h1_inner(result.field, result.field);
  CHECK(std::abs(result.nehari_defects[0]) <= 1e-8 * a);
  CHECK(result.boundary_mass <= 1e-10);
  check_monotone_history(result.action_history);

  SUBCASE("solution is positive") {
    for (double v : result.field.values()) CHECK(v >= -1e-12);
  }

  SUBCASE("solution is even about its own center") {
    const double num = [&] {
      double m = 0.0, w = 0.0;
      for (std::size_t i = 0; i < result.field.size(); ++i) {
        m += result.field.point(i)[0] * result.field[i];
        w += result.field[i];
      }
      return m / w;
    }();
    const Field mirrored = reflect_axis1(result.field, 2.0 * num);
    CHECK(norm_h1(result.field - mirrored) <= 1e-6 * norm_h1(result.field));
  }

  SUBCASE("nehari maximality along the output ray") {
    for (double t : {0.5, 0.9, 1.1, 2.0})
      CHECK(action_choquard(t * result.field, params) <= result.energy + 1e-12);
  }
}

TEST_CASE("groundstate translation equivariance") {
  const auto g = GridSpec::make(1, 30.0, 1024);
  const auto params = ChoquardParams::make(1, 2.0, 0.5, true);
  const double shift = 16.0 * g.spacing();

  const Field init = gaussian_bump(g, 0.0, 1.0, 1.5);
  const std::vector<double> sv{shift};
  const Field init_shifted = translate(init, sv);

  const auto base = solve_groundstate(params, init);
  const auto moved = solve_groundstate(params, init_shifted);

  CHECK(moved.energy == doctest::Approx(base.energy).epsilon(1e-10));
  const Field expected = translate(base.field, sv);
  CHECK(norm_h1(moved.field - expected) <= 1e-6 * norm_h1(base.field));
}

TEST_CASE("groundstate approaches the local limit as alpha shrinks") {
  const auto g = GridSpec::make(1, 30.0, 1024);
  const auto params = ChoquardParams::make(1, 2.0, 0.05, true);
  const Field init = nls_groundstate(1, 4.0, g);

  const auto result = solve_groundstate(params, init);
  CHECK(std::abs(result.energy - 4.0 / 3.0) <= 0.1 * (4.0 / 3.0));
}

TEST_CASE("nodal solve with a symmetric start") {
  const auto g = GridSpec::make(1, 30.0, 1024);
  const auto params = ChoquardParams::make(1, 2.0, 0.5, true);
  const Field u0 = nls_groundstate(1, 4.0, g);
  const std::vector<double> right{4.0}, left{-4.0};
  const Field init = translate(u0, left) - translate(u0, right);

  const auto nodal = solve_nodal(params, init);
  const auto gst = solve_groundstate(params, gaussian_bump(g, 0.0, 1.0, 1.5));

  CHECK(nodal.energy > gst.energy);
  CHECK(nodal.energy < 2.0 * gst.energy);
  REQUIRE(nodal.nehari_defects.size() == 2);
  const double scale = h1_inner(nodal.field, nodal.field);
  CHECK(std::abs(nodal.nehari_defects[0]) <= 1e-9 * scale);
  CHECK(std::abs(nodal.nehari_defects[1]) <= 1e-9 * scale);
  CHECK(nodal.residual_h1 <= 1e-3);
  check_monotone_history(nodal.action_history);

  SUBCASE("odd symmetry is preserved by a symmetric iteration") {
    CHECK(symmetry_defect(nodal.field) <= 1e-6);
  }

  SUBCASE("orientation: positive bump on the left") {
    const Field up = positive_part(nodal.field);
    const Field um = -1.0 * negative_part(nodal.field);
    double cp = 0.0, wp = 0.0, cm = 0.0, wm = 0.0;
    for (std::size_t i = 0; i < up.size(); ++i) {
      cp += up.point(i)[0] * up[i];
      wp += up[i];
      cm += um.point(i)[0] * um[i];
      wm += um[i];
    }
    CHECK(cp / wp < cm / wm);
  }
}

TEST_CASE("solver error reporting") {
  const auto g = GridSpec::make(1, 20.0, 256);
  const auto params = ChoquardParams::make(1, 2.0, 0.5, true);

  SUBCASE("zero initial field") {
    CHECK_THROWS_AS(solve_groundstate(params, Field(g)), std::invalid_argument);
  }

  SUBCASE("iteration limit") {
    SolverConfig config;
    config.max_iterations = 1;
    config.residual_tolerance = 1e-14;
    try {
      solve_groundstate(params, gaussian_bump(g, 0.0, 1.0, 1.5), config);
      FAIL("expected SolverError");
    } catch (const SolverError& e) {
      CHECK(e.kind() == SolverFailure::max_iterations);
    }
  }

  SUBCASE("one-signed nodal start reports the dead part") {
    try {
      solve_nodal(params, gaussian_bump(g, 0.0, 1.0, 1.5));
      FAIL("expected SolverError");
    } catch (const SolverError& e) {
      CHECK(e.kind() == SolverFailure::collapse_negative);
    }
    try {
      solve_nodal(params, gaussian_bump(g, 0.0, -1.0, 1.5));
      FAIL("expected SolverError");
    } catch (const SolverError& e) {
      CHECK(e.kind() == SolverFailure::collapse_positive);
    }
  }
}

TEST_CASE("two-bump fit") {
  const auto g = GridSpec::make(1, 30.0, 1024);
  const Field w = nls_groundstate(1, 4.0, g);

  SUBCASE("exact two-bump input, lattice centers") {
    const double a = -5.0 - g.spacing() * 0.0, b = 6.0;
    const std::vector<double> sa{a}, sb{b};
    const Field u = translate(w, sa) - translate(w, sb);
    const auto fit = fit_two_bumps(u, w);
    CHECK(std::abs(fit.xi_plus[0] - a) <= 1e-6);
    CHECK(std::abs(fit.xi_minus[0] - b) <= 1e-6);
    CHECK(fit.fit_error_h1 <= 1e-9);
    CHECK(fit.separation == doctest::Approx(b - a).epsilon(1e-6));
  }

  SUBCASE("exact two-bump input, off-lattice centers") {
    const double a = -4.7333, b = 5.2712;
    const std::vector<double> sa{a}, sb{b};
    const Field u = translate(w, sa) - translate(w, sb);
    const auto fit = fit_two_bumps(u, w);
    CHECK(std::abs(fit.xi_plus[0] - a) <= 1e-6);
    CHECK(std::abs(fit.xi_minus[0] - b) <= 1e-6);
    CHECK(fit.fit_error_h1 <= 1e-8);
  }

  SUBCASE("noise moves the error, not the centers") {
    const double a = -5.0, b = 5.0;
    const std::vector<double> sa{a}, sb{b};
    Field u = translate(w, sa) - translate(w, sb);
    std::mt19937_64 rng(17);
    Field noise = sample(g, [&](const std::array<double, 3>& x) {
      return std::cos(0.8 * x[0]) * std::exp(-x[0] * x[0] / 50.0);
    });
    const double level = 0.01 * norm_h1(u) / norm_h1(noise);
    axpy_in_place(level, noise, u);
    const auto fit = fit_two_bumps(u, w);
    CHECK(std::abs(fit.xi_plus[0] - a) <= g.spacing());
    CHECK(std::abs(fit.xi_minus[0] - b) <= g.spacing());
    CHECK(fit.fit_error_h1 >= 0.003);
    CHECK(fit.fit_error_h1 <= 0.05);
  }

  SUBCASE("negating the field swaps the centers") {
    const std::vector<double> sa{-5.0}, sb{5.0};
    const Field u = translate(w, sa) - translate(w, sb);
    const auto fit = fit_two_bumps(u, w);
    const auto swapped = fit_two_bumps(-1.0 * u, w);
    CHECK(swapped.xi_plus[0] == doctest::Approx(fit.xi_minus[0]).epsilon(1e-9));
    CHECK(swapped.xi_minus[0] == doctest::Approx(fit.xi_plus[0]).epsilon(1e-9));
  }

  SUBCASE("one-signed input is rejected") {
    CHECK_THROWS_AS(fit_two_bumps(w, w), std::invalid_argument);
  }
}

TEST_CASE("symmetry defect") {
  const auto g = GridSpec::make(1, 30.0, 1024);
  const Field w = nls_groundstate(1, 4.0, g);

  SUBCASE("exactly odd field") {
    const std::vector<double> sa{-5.0}, sb{5.0};
    const Field u = translate(w, sa) - translate(w, sb);
    CHECK(symmetry_defect(u) <= 1e-10);
  }

  SUBCASE("unbalanced bumps have a large defect") {
    const std::vector<double> sb{8.0};
    const Field u = w - 0.5 * translate(w, sb);
    CHECK(symmetry_defect(u) > 0.2);
  }

  SUBCASE("defect is translation invariant") {
    const std::vector<double> sa{-5.0}, sb{5.0};
    const Field u = translate(w, sa) - translate(w, sb);
    const std::vector<double> shift{8.0 * g.spacing()};
    const Field moved = translate(u, shift);
    CHECK(symmetry_defect(moved) == doctest::Approx(symmetry_defect(u)).epsilon(1e-10));
  }

  SUBCASE("one-signed input is rejected") {
    CHECK_THROWS_AS(symmetry_defect(w), std::invalid_argument);
  }
}
