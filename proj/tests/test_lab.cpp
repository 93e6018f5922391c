#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "choq/grid.hpp"
#include "choq/lab.hpp"
#include "choq/report.hpp"
#include "choq/riesz.hpp"

using namespace choq;
namespace {

const GridSpec kGrid = GridSpec::make(1, 30.0, 512);

Field gauss_bump() {
  return sample(kGrid, [](const std::array<double, 3>& x) {
    return std::exp(-0.5 * x[0] * x[0]);
  });
}

Field sech_bump() {
  return sample(kGrid, [](const std::array<double, 3>& x) {
    return 1.3 / std::cosh(x[0]);
  });
}

}  // namespace

TEST_CASE("spectral comparison bound") {
  const Field f = gauss_bump();

  SUBCASE("holds along a shrinking-alpha ladder with bounded lhs/alpha") {
    // the bound certifies |B_alpha(f,g) - <f,g>| <= alpha * (explicit norms),
    // so on a fixed smooth bump the lhs must itself vanish linearly in alpha
    double ratio_min = std::numeric_limits<double>::infinity();
    double ratio_max = 0.0;
    for (double alpha : {0.2, 0.1, 0.05, 0.025}) {
      const auto rec = check_fourier_bound(f, f, alpha, std::max(0.5, alpha), 0.5);
      CHECK(rec.holds);
      CHECK(rec.lhs <= rec.rhs);
      ratio_min = std::min(ratio_min, rec.lhs / alpha);
      ratio_max = std::max(ratio_max, rec.lhs / alpha);
    }
    CHECK(ratio_max / ratio_min <= 2.0);
  }

  SUBCASE("zero field gives the degenerate record") {
    const Field z(kGrid);
    const auto rec = check_fourier_bound(z, f, 0.1, 0.5, 0.5);
    CHECK(rec.lhs == 0.0);
    CHECK(rec.holds);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(check_fourier_bound(f, f, 0.6, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(check_fourier_bound(f, f, 0.1, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(check_fourier_bound(f, f, 0.1, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(check_fourier_bound(f, f, 0.1, 0.5, 1.5), std::invalid_argument);
    const Field other(GridSpec::make(1, 30.0, 256));
    CHECK_THROWS_AS(check_fourier_bound(f, other, 0.1, 0.5, 0.5), std::invalid_argument);
  }
}

TEST_CASE("riesz energy error ladder") {
  SUBCASE("zero field") {
    const auto rec = check_riesz_energy_error(Field(kGrid), 2.0, 0.1);
    CHECK(rec.error == 0.0);
    CHECK(rec.bound_ratio == 0.0);
  }

  SUBCASE("single bump: the ratio to alpha ||u||_H1^{2p} stays put") {
    const Field u = sech_bump();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double alpha : {0.2, 0.1, 0.05}) {
      const auto rec = check_riesz_energy_error(u, 2.0, alpha);
      CHECK(rec.error > 0.0);
      lo = std::min(lo, rec.bound_ratio);
      hi = std::max(hi, rec.bound_ratio);
    }
    CHECK(hi / lo <= 2.0);
  }

  SUBCASE("separated bumps: still controlled by the same envelope") {
    const Field u = sech_bump();
    std::vector<double> shift = {-6.0};
    Field two = translate(u, shift);
    shift[0] = 6.0;
    axpy_in_place(1.0, translate(u, shift), two);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double alpha : {0.2, 0.1, 0.05}) {
      const auto rec = check_riesz_energy_error(two, 2.0, alpha);
      lo = std::min(lo, rec.bound_ratio);
      hi = std::max(hi, rec.bound_ratio);
    }
    CHECK(hi / lo <= 2.0);
    CHECK(hi <= 1.0);
  }
}

TEST_CASE("oscillatory negative control") {
  // the carrier must stay below the grid Nyquist frequency, so this check
  // lives on a small box with fine spacing (nyquist 32 cycles per unit)
  const auto grid = GridSpec::make(1, 8.0, 1024);
  const Field psi = sample(grid, [](const std::array<double, 3>& x) {
    return std::exp(-2.0 * x[0] * x[0]);
  });

  SUBCASE("modulated bumps keep an order-one negative error as alpha shrinks") {
    // alpha(n) = 1/(4 log n) keeps n^{alpha(n)} pinned at e^{1/4}, so the
    // symbol gap at the carrier frequency never closes
    const auto recs = check_oscillation_degradation(
        psi, {4, 8, 16}, [](int n) { return 1.0 / (4.0 * std::log(double(n))); });
    REQUIRE(recs.size() == 3);
    double prev_ratio = 0.0;
    for (const auto& rec : recs) {
      CHECK(rec.error < 0.0);
      CHECK(std::abs(rec.error) >= 0.3 * rec.mass);
      // the unmodulated bump at the same alpha loses its error linearly, so
      // the degradation factor grows along the ladder
      const auto plain =
          check_oscillation_degradation(psi, {0}, [&rec](int) { return rec.alpha; })[0];
      const double ratio =
          (std::abs(rec.error) / rec.mass) / (std::abs(plain.error) / plain.mass);
      CHECK(ratio > prev_ratio);
      prev_ratio = ratio;
    }
    CHECK(prev_ratio >= 8.0);
  }

  SUBCASE("frequency zero is the plain bump: the error flips sign") {
    const auto recs = check_oscillation_degradation(psi, {0}, [](int) { return 0.1; });
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].error > 0.0);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(check_oscillation_degradation(psi, {-1}, [](int) { return 0.1; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_oscillation_degradation(psi, {4}, [](int) { return 1.5; }),
                    std::invalid_argument);
    // carrier at the Nyquist frequency of this grid (64 points per unit)
    CHECK_THROWS_AS(check_oscillation_degradation(psi, {32}, [](int) { return 0.1; }),
                    std::invalid_argument);
  }
}

TEST_CASE("endpoint upper bound") {
  const Field f = gauss_bump();

  SUBCASE("deficit scales like the first power of N - alpha") {
    const auto s = check_upper_bound_alphaN(f, {0.8, 0.9, 0.95, 0.98}, 2.0);
    REQUIRE(s.records.size() == 4);
    CHECK(s.fitted_exponent >= 0.8);
    CHECK(s.fitted_exponent <= 1.2);
    CHECK(s.ratio_min > 0.0);
    CHECK(s.ratio_max / s.ratio_min <= 1.2);
  }

  SUBCASE("deficit is translation invariant") {
    std::vector<double> shift = {12.0 * kGrid.spacing()};
    const auto moved = check_upper_bound_alphaN(translate(f, shift), {0.9}, 2.0);
    const auto fixed = check_upper_bound_alphaN(f, {0.9}, 2.0);
    CHECK(std::abs(moved.records[0].deficit - fixed.records[0].deficit) <=
          1e-12 * fixed.records[0].deficit);
  }

  SUBCASE("zero field gives zero deficit and an empty fit") {
    const auto s = check_upper_bound_alphaN(Field(kGrid), {0.9}, 2.0);
    CHECK(s.records[0].deficit == 0.0);
    CHECK(s.fitted_exponent == 0.0);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(check_upper_bound_alphaN(f, {0.9}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(check_upper_bound_alphaN(f, {0.4}, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(check_upper_bound_alphaN(-1.0 * f, {0.9}, 2.0), std::invalid_argument);
  }
}

TEST_CASE("delocalized pairing limit") {
  const Field f = gauss_bump();
  const std::vector<double> alphas = {0.9, 0.95, 0.98};

  SUBCASE("fixed bumps, dilution one") {
    const auto recs = check_translated_limit(f, f, alphas, [](double) { return 0.0; });
    REQUIRE(recs.size() == 3);
    for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].gap < recs[i - 1].gap);
    CHECK(recs.back().gap <= 0.02);
  }

  SUBCASE("separation rule tuned to dilution one half") {
    // (1 + d)^{alpha - 1} = 1/2 forces d beyond any box near the endpoint;
    // the pairing is evaluated with the offset handled analytically
    const auto recs = check_translated_limit(f, f, alphas, [](double alpha) {
      return std::pow(2.0, 1.0 / (1.0 - alpha)) - 1.0;
    });
    CHECK(recs.back().separation > 1e12);
    for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].gap < recs[i - 1].gap);
    for (const auto& rec : recs) {
      CHECK(rec.target == doctest::Approx(0.5 * std::pow(integrate(f), 2)).epsilon(1e-12));
      CHECK(rec.gap <= 0.02);
    }
  }

  SUBCASE("zero field pairs to zero with zero gap") {
    const auto recs = check_translated_limit(Field(kGrid), f, {0.9}, [](double) { return 1.0; });
    CHECK(recs[0].pairing == 0.0);
    CHECK(recs[0].gap == 0.0);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(check_translated_limit(-1.0 * f, f, {0.9}, [](double) { return 0.0; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_translated_limit(f, f, {0.9}, [](double) { return -1.0; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        check_translated_limit(f, f, {0.9},
                               [](double) { return std::numeric_limits<double>::quiet_NaN(); }),
        std::invalid_argument);
  }
}

TEST_CASE("sweep configuration validation") {
  SUBCASE("the shipped defaults validate") {
    CHECK_NOTHROW(SweepConfig::alpha0_default().validate());
    CHECK_NOTHROW(SweepConfig::alphaN_default().validate());
    CHECK(SweepConfig::alpha0_default().alpha_list.size() == 4);
    CHECK(SweepConfig::alphaN_default().p > 2.0);
  }

  SUBCASE("rejects inconsistent schedules") {
    auto cfg = SweepConfig::alpha0_default();
    cfg.alpha_list = {};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.alpha_list = {0.1, 0.2};  // wrong direction for alpha0
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.alpha_list = {0.4, 1.2};  // outside (0, N)
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }

  SUBCASE("rejects p = 2 near the top endpoint") {
    auto cfg = SweepConfig::alphaN_default();
    cfg.p = 2.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }

  SUBCASE("rejects a grid dimension mismatch") {
    auto cfg = SweepConfig::alpha0_default();
    cfg.grid = GridSpec::make(2, 12.0, 64);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }

  SUBCASE("mode dispatch is checked") {
    CHECK_THROWS_AS(run_sweep_alpha0(SweepConfig::alphaN_default()), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep_alphaN(SweepConfig::alpha0_default()), std::invalid_argument);
  }
}

TEST_CASE("power law fit recovery") {
  SUBCASE("three-point extrapolation recovers an exact power law") {
    const double level = 0.894427, coeff = 0.7, expo = 1.3;
    std::vector<double> t = {0.4, 0.2, 0.1, 0.05};
    std::vector<double> c;
    for (double ti : t) c.push_back(level + coeff * std::pow(ti, expo));
    const auto fit = fit_power_law(t, c, level);
    REQUIRE(fit.valid);
    CHECK(fit.exponent == doctest::Approx(expo).epsilon(1e-8));
    CHECK(fit.coefficient == doctest::Approx(coeff).epsilon(1e-6));
    CHECK(fit.level == doctest::Approx(level).epsilon(1e-6));
  }

  SUBCASE("two points fall back to the log-log fit against the target") {
    const double level = 1.25, coeff = 0.3, expo = 0.9;
    std::vector<double> t = {0.4, 0.2};
    std::vector<double> c = {level + coeff * std::pow(0.4, expo),
                             level + coeff * std::pow(0.2, expo)};
    const auto fit = fit_power_law(t, c, level);
    REQUIRE(fit.valid);
    CHECK(fit.exponent == doctest::Approx(expo).epsilon(1e-10));
    CHECK(fit.level == level);
  }

  SUBCASE("flat levels at the target cannot be fitted") {
    const auto fit = fit_power_law({0.4, 0.2, 0.1}, {2.0, 2.0, 2.0}, 2.0);
    CHECK_FALSE(fit.valid);
  }

  SUBCASE("length mismatch throws") {
    CHECK_THROWS_AS(fit_power_law({0.4, 0.2}, {1.0}, 0.0), std::invalid_argument);
  }
}

TEST_CASE("json writer") {
  SUBCASE("keys are emitted in sorted order regardless of insertion order") {
    JsonValue a = JsonValue::object();
    a["zeta"] = 1;
    a["alpha"] = 2;
    a["mid"] = 3;
    JsonValue b = JsonValue::object();
    b["mid"] = 3;
    b["alpha"] = 2;
    b["zeta"] = 1;
    CHECK(a.dump() == b.dump());
    CHECK(a.dump().find("alpha") < a.dump().find("mid"));
    CHECK(a.dump().find("mid") < a.dump().find("zeta"));
  }

  SUBCASE("doubles round-trip exactly through the 17-digit rendering") {
    for (double v : {0.1, 1.0 / 3.0, 6.02e23, 1e-300, -2.5, 3.14159265358979}) {
      const std::string s = format_double(v);
      CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
  }

  SUBCASE("non-finite numbers render as null") {
    CHECK(JsonValue(std::numeric_limits<double>::quiet_NaN()).dump() == "null\n");
    CHECK(JsonValue(std::numeric_limits<double>::infinity()).dump() == "null\n");
  }

  SUBCASE("strings are escaped") {
    const std::string dumped = JsonValue("a\"b\\c\nd\x01").dump();
    CHECK(dumped == "\"a\\\"b\\\\c\\nd\\u0001\"\n");
  }

  SUBCASE("containers") {
    JsonValue root = JsonValue::object();
    root["empty_arr"] = JsonValue::array();
    root["empty_obj"] = JsonValue::object();
    JsonValue arr = JsonValue::array();
    arr.push_back(1);
    arr.push_back("two");
    arr.push_back(JsonValue());
    root["arr"] = std::move(arr);
    const std::string dumped = root.dump();
    CHECK(dumped.find("[]") != std::string::npos);
    CHECK(dumped.find("{}") != std::string::npos);
    CHECK(dumped.find("null") != std::string::npos);
    CHECK(dumped.back() == '\n');
  }

  SUBCASE("kind misuse throws") {
    JsonValue obj = JsonValue::object();
    CHECK_THROWS_AS(obj.push_back(1), std::logic_error);
    JsonValue arr = JsonValue::array();
    CHECK_THROWS_AS(arr["key"] = 1, std::logic_error);
  }
}

TEST_CASE("csv formatting") {
  const std::string out = format_csv({"a", "b"}, {{"1", "2"}, {"3", "4"}});
  CHECK(out == "a,b\n1,2\n3,4\n");
  CHECK_THROWS_AS(format_csv({"a", "b"}, {{"1"}}), std::logic_error);
}

TEST_CASE("sweep reports are deterministic") {
  // a reduced schedule on a coarse grid; the point is byte-identical output,
  // not endpoint physics
  SweepConfig cfg = SweepConfig::alphaN_default();
  cfg.alpha_list = {0.7, 0.8};
  cfg.grid = GridSpec::make(1, 30.0, 256);
  cfg.solver.seed = 123;

  const ExperimentReport first = run_sweep_alphaN(cfg);
  const ExperimentReport second = run_sweep_alphaN(cfg);

  REQUIRE(first.records.size() == 2);
  for (const auto& rec : first.records) {
    CHECK(rec.gst.converged);
    CHECK(rec.nod.converged);
    CHECK(rec.c_nod > rec.c_gst);
    CHECK(rec.nodal.separation > 0.0);
  }
  CHECK(serialize_report_json(first) == serialize_report_json(second));
  CHECK(serialize_report_csv(first) == serialize_report_csv(second));

  SUBCASE("csv carries one row per alpha plus the header") {
    const std::string csv = serialize_report_csv(first);
    std::size_t lines = 0;
    for (char c : csv)
      if (c == '\n') ++lines;
    CHECK(lines == 3);
    CHECK(csv.rfind("alpha,c_gst,c_nod,", 0) == 0);
  }
}
