#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wetperc/analytics.hpp"

using namespace wetperc;
using doctest::Approx;
using std::numbers::ln2;
using std::numbers::pi;

TEST_CASE("envelope areas at r_r = 20, r_f = 40") {
  CHECK(outer_envelope_area(20.0, 40.0) == Approx(10865.78).epsilon(0.5 / 10865.78));
  CHECK(inner_envelope_area(20.0, 40.0) == Approx(3775.9).epsilon(0.5 / 3775.9));
}

TEST_CASE("area sandwich on a grid") {
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double r_f = 5.0 * j;
      const double r_r = r_f * i / 20.0;
      CHECK(inner_envelope_area(r_r, r_f) < pi * r_f * r_f);
      CHECK(pi * r_f * r_f < outer_envelope_area(r_r, r_f));
    }
  }
}

TEST_CASE("unit critical density") {
  CHECK(lambda_c_unit() == Approx(0.8825424006106064).epsilon(1e-15));
  CHECK(std::abs(ln2 / lambda_c_unit() - pi / 4.0) < 1e-15);
}

TEST_CASE("g functions") {
  const auto g0 = g_functions(0.0);
  CHECK(std::abs(g0.outer - 1.0) < 1e-9);
  CHECK(std::abs(g0.inner - 1.0) < 1e-9);
  CHECK(g_functions(0.5).outer == Approx(2.1617).epsilon(1e-4));
  CHECK_THROWS_AS(g_functions(1.5), ParameterError);
  CHECK_THROWS_AS(g_functions(-0.1), ParameterError);
  // Envelope areas scale as g * pi r_f^2.
  CHECK(g_functions(0.5).outer * pi * 1600.0 == Approx(outer_envelope_area(20.0, 40.0)));
  CHECK(g_functions(0.5).inner * pi * 1600.0 == Approx(inner_envelope_area(20.0, 40.0)));
}

TEST_CASE("reference densities at (0.01, 20, 40)") {
  const auto b = bounds_report({0.01, 20.0, 40.0});
  REQUIRE(b.lower.defined());
  REQUIRE(b.upper.defined());
  REQUIRE(b.star.defined());
  REQUIRE(b.inner_city.defined());
  CHECK(*b.lower.value == Approx(6.38e-5).epsilon(2e-3));
  CHECK(*b.upper.value == Approx(6.33e-4).epsilon(2e-3));
  CHECK(*b.star.value == Approx(9.414e-5).epsilon(1e-3));
  CHECK(b.gilbert == Approx(8.825e-5).epsilon(1e-3));
  CHECK(*b.lower.value < *b.star.value);
  CHECK(*b.star.value < *b.upper.value);
  CHECK(*approx_inner_city(0.005, 20.0, 40.0).value == Approx(1.158e-4).epsilon(1e-3));
}

TEST_CASE("thresholds leave values undefined") {
  const auto b = bounds_report({1e-4, 20.0, 40.0});
  CHECK_FALSE(b.lower.defined());
  CHECK_FALSE(b.upper.defined());
  CHECK_FALSE(b.star.defined());
  CHECK_FALSE(b.inner_city.defined());
  CHECK(b.lower.lambda_r_threshold == Approx(2.0 * ln2 / (3.0 * std::sqrt(3.0) * 400.0)));
  CHECK(b.upper.lambda_r_threshold == Approx(26.0 * ln2 / (3.0 * std::sqrt(3.0) * 400.0)));
  CHECK(b.star.note().find("requires lambda_r >") != std::string::npos);
  CHECK(b.gilbert > 0.0);
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_WITH_AS(bounds_report({0.01, 50.0, 40.0}), "r_r must not exceed r_f", ParameterError);
  CHECK_THROWS_AS(bounds_report({0.0, 20.0, 40.0}), ParameterError);
  CHECK_THROWS_AS(bounds_report({0.01, 20.0, 40.0}, -1.0), ParameterError);
  CHECK_THROWS_AS(validate(NetworkParams{0.01, 20.0, -1.0, 40.0}), ParameterError);
}

TEST_CASE("ordering and monotonicity over a lambda_r grid") {
  for (double r_f : {20.0, 40.0, 80.0}) {
    double prev_l = INFINITY, prev_u = INFINITY, prev_s = INFINITY, prev_ic = INFINITY;
    for (int k = 0; k <= 120; ++k) {
      const double lambda_r = 1e-4 * std::pow(10.0, k / 30.0);
      const auto b = bounds_report({lambda_r, 20.0, r_f});
      if (b.lower.defined() && b.star.defined() && b.upper.defined()) {
        CHECK(*b.lower.value < *b.star.value);
        CHECK(*b.star.value < *b.upper.value);
      }
      if (b.lower.defined()) {
        CHECK(*b.lower.value <= prev_l);
        prev_l = *b.lower.value;
      }
      if (b.upper.defined()) {
        CHECK(*b.upper.value <= prev_u);
        prev_u = *b.upper.value;
      }
      if (b.star.defined()) {
        CHECK(*b.star.value <= prev_s);
        prev_s = *b.star.value;
      }
      if (b.inner_city.defined()) {
        CHECK(*b.inner_city.value <= prev_ic);
        prev_ic = *b.inner_city.value;
      }
    }
  }
}

TEST_CASE("dense-device limits") {
  const double r_r = 20.0, r_f = 40.0;
  const double lambda_r = 1e3 / (r_r * r_r);
  const auto b = bounds_report({lambda_r, r_r, r_f});
  CHECK(*b.lower.value == Approx(ln2 / outer_envelope_area(r_r, r_f)).epsilon(1e-6));
  CHECK(*b.upper.value == Approx(ln2 / inner_envelope_area(r_r, r_f)).epsilon(1e-6));
  CHECK(*b.star.value == Approx(b.gilbert).epsilon(1e-6));
}

TEST_CASE("combined approximation approaches inner-city model near threshold") {
  const double r_r = 1.0, r_f = 100.0;
  const double lambda_r = lambda_c_unit() / (r_r * r_r) * (1.0 + 1e-9);
  const auto star = approx_star(lambda_r, r_r, r_f);
  const auto ic = approx_inner_city(lambda_r, r_r, r_f);
  REQUIRE(star.defined());
  REQUIRE(ic.defined());
  CHECK(std::abs(*star.value / *ic.value - 1.0) < 0.01);
}

TEST_CASE("effective active density") {
  CHECK(effective_active_density(0.01, 0.0, 40.0) == 0.0);
  CHECK(effective_active_density(0.01, INFINITY, 40.0) == 0.01);
  CHECK(effective_active_density(0.01, 1e-4, 40.0) ==
        Approx(0.01 * (1.0 - std::exp(-1e-4 * pi * 1600.0))));
  CHECK_THROWS_AS(effective_active_density(-1.0, 1.0, 1.0), ParameterError);
}

TEST_CASE("capex report") {
  const Region big(4000.0, 4000.0);
  const DeviceParams p{0.01, 20.0, 40.0};

  const auto c = capex_report(p, big, PlanningMode::kConservative);
  CHECK(c.full_coverage_density == 3.125e-4);
  CHECK(c.planned_density == Approx(1.3789e-4).epsilon(1e-4));
  CHECK(c.density_ratio == Approx(2.27).epsilon(0.01 / 2.27));
  CHECK(c.stations_saved > 2700.0);
  CHECK(c.uncovered_probability == Approx(0.5).epsilon(1e-3));

  const auto g = capex_report(p, big, PlanningMode::kGilbert);
  CHECK(g.planned_density == Approx(8.83e-5).epsilon(1e-3));
  CHECK(g.density_ratio == Approx(3.54).epsilon(1e-3));

  const auto s = capex_report(p, big);
  CHECK(s.mode == PlanningMode::kApproxStar);
  CHECK(s.planned_density == Approx(*approx_star(0.01, 20.0, 40.0).value));
  CHECK_THROWS_AS(capex_report({1e-4, 20.0, 40.0}, big), ParameterError);

  // Very dense devices: star is numerically the Gilbert form.
  const auto dense = capex_report({1.0, 20.0, 40.0}, big);
  CHECK(dense.planned_density == Approx(g.planned_density));

  // WET radius at region scale: a handful of stations, still fewer than full coverage.
  const auto wide = capex_report({0.01, 20.0, 2000.0}, big, PlanningMode::kGilbert);
  CHECK(wide.stations_saved > 0.0);
  CHECK(wide.stations_saved < wide.full_coverage_density * big.area());

  CHECK(std::string(to_string(PlanningMode::kConservative)) == "conservative");
}
