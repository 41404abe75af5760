#include <doctest.h>

#include <cmath>
#include <random>

#include "wetperc/montecarlo.hpp"
#include "wetperc/rng.hpp"

using namespace wetperc;
using doctest::Approx;

namespace {

SimConfig small_config(std::size_t iterations = 30) {
  SimConfig c;
  c.region = Region(400.0, 400.0);
  c.iterations = iterations;
  c.master_seed = 2024;
  c.keep_values = true;
  return c;
}

}  // namespace

TEST_CASE("summarize") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto r = summarize(v, true);
  CHECK(r.mean == 2.5);
  CHECK(r.std_error == Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  REQUIRE(r.ci);
  CHECK(r.ci->low < r.mean);
  CHECK(r.ci->high > r.mean);
  CHECK(r.values == v);

  const std::vector<double> one{7.0};
  const auto s = summarize(one);
  CHECK(s.mean == 7.0);
  CHECK_FALSE(s.ci.has_value());
  CHECK(s.ci_method == CiMethod::kNone);
  CHECK(summarize({}).samples == 0);
}

TEST_CASE("proportion intervals") {
  const auto zero = proportion_estimate(0, 20);
  REQUIRE(zero.ci);
  CHECK(zero.ci_method == CiMethod::kClopperPearson);
  CHECK(zero.ci->low == 0.0);
  CHECK(zero.ci->high == Approx(1.0 - std::pow(0.025, 1.0 / 20.0)));
  const auto all = proportion_estimate(20, 20);
  CHECK(all.ci->high == 1.0);
  CHECK(all.ci->low == Approx(std::pow(0.025, 1.0 / 20.0)));
  const auto half = proportion_estimate(10, 20);
  CHECK(half.ci_method == CiMethod::kNormal);
  CHECK(half.ci->low <= 0.5);
  CHECK(half.ci->high >= 0.5);
  CHECK_FALSE(proportion_estimate(1, 1).ci.has_value());
  CHECK_THROWS_AS(proportion_estimate(3, 2), ParameterError);
}

TEST_CASE("results do not depend on the number of workers") {
  SimConfig c = small_config(12);
  const DeviceParams p{0.02, 15.0, 30.0};
  const auto serial = estimate_critical_density(p, c);
  c.workers = 3;
  const auto parallel = estimate_critical_density(p, c);
  CHECK(serial.values == parallel.values);
  CHECK(serial.mean == parallel.mean);

  const NetworkParams n{0.02, 15.0, 3e-4, 30.0};
  const auto a = percolation_probability(n, c);
  c.workers = 1;
  const auto b = percolation_probability(n, c);
  CHECK(a.values == b.values);
}

TEST_CASE("coupled curve: monotone and equal to batch thinning") {
  const SimConfig c = small_config(15);
  const DeviceParams p{0.02, 15.0, 30.0};
  const std::vector<double> grid{0.0, 5e-5, 1e-4, 2e-4, 3e-4, 4e-4, 6e-4};
  const auto curve = percolation_curve(p, grid, c);
  REQUIRE(curve.size() == grid.size());
  CHECK(curve[0].mean == 0.0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    CHECK(curve[k].mean >= curve[k - 1].mean);
    for (std::size_t i = 0; i < c.iterations; ++i) CHECK(curve[k].values[i] >= curve[k - 1].values[i]);
  }

  // Oracle: rebuild each thinned station set from scratch.
  const double lambda_max = grid.back();
  for (std::size_t i = 0; i < c.iterations; ++i) {
    const PointSet devices = sample_ppp(p.lambda_r, c.region, derive_seed(c.master_seed, i, Stream::kDevices));
    const PointSet stations = sample_ppp(lambda_max, c.region, derive_seed(c.master_seed, i, Stream::kStations));
    Engine mark_rng = make_engine(derive_seed(c.master_seed, i, Stream::kMarks));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> marks;
    for (std::size_t k = 0; k < stations.size(); ++k) marks.push_back(unit(mark_rng));
    for (std::size_t g = 0; g < grid.size(); ++g) {
      PointSet kept;
      for (std::size_t k = 0; k < stations.size(); ++k) {
        if (marks[k] < grid[g] / lambda_max) kept.points.push_back(stations[k]);
      }
      const WcRgg graph = build_wc_rgg(devices, kept, p.r_r, p.r_f);
      const bool s = spans(connected_components(graph), c.region, c.rule_for(p.r_r));
      CHECK(curve[g].values[i] == (s ? 1.0 : 0.0));
    }
  }
  CHECK_THROWS_AS(percolation_curve(p, std::vector<double>{}, c), ParameterError);
  CHECK_THROWS_AS(percolation_curve(p, std::vector<double>{-1.0}, c), ParameterError);
}

TEST_CASE("critical station count is exact") {
  const SimConfig c = small_config();
  const DeviceParams p{0.02, 15.0, 30.0};
  for (std::uint64_t i = 0; i < 8; ++i) {
    const PointSet devices = sample_ppp(p.lambda_r, c.region, derive_seed(9, i, Stream::kDevices));
    const std::uint64_t station_seed = derive_seed(9, i, Stream::kStations);
    const auto crit = critical_density_realization(devices, p, station_seed, c);
    REQUIRE(crit.reached);
    CHECK(crit.density == Approx(crit.stations / c.region.area()));

    Engine rng = make_engine(station_seed);
    std::uniform_real_distribution<double> ux(0.0, c.region.width()), uy(0.0, c.region.height());
    PointSet stations;
    for (std::uint64_t k = 0; k < crit.stations; ++k) {
      const double x = ux(rng);
      const double y = uy(rng);
      stations.points.push_back({x, y});
    }
    const auto rule = c.rule_for(p.r_r);
    CHECK(spans(connected_components(build_wc_rgg(devices, stations, p.r_r, p.r_f)), c.region, rule));
    stations.points.pop_back();
    CHECK_FALSE(spans(connected_components(build_wc_rgg(devices, stations, p.r_r, p.r_f)), c.region, rule));
  }
}

TEST_CASE("sparse devices cannot span and are censored") {
  SimConfig c = small_config(10);
  const DeviceParams sparse{1e-4, 10.0, 20.0};
  const auto one = critical_density_realization(sparse, 1, 2, c);
  CHECK_FALSE(one.reached);
  CHECK_THROWS_AS(estimate_critical_density(sparse, c), CensoringError);
  c.station_cap = 1;
  try {
    estimate_critical_density({0.02, 15.0, 30.0}, c);
    FAIL("expected censoring");
  } catch (const CensoringError& e) {
    CHECK(e.partial().censored == 10);
  }
}

TEST_CASE("dense-station limit gives a plausible Gilbert constant") {
  SimConfig c;
  c.region = Region(40.0 * 5.0, 40.0 * 5.0);
  c.iterations = 40;
  const auto r = dense_es_critical(5.0, c);
  CHECK(r.censored == 0);
  CHECK(r.mean > 0.9);
  CHECK(r.mean < 2.0);
  CHECK_THROWS_AS(dense_es_critical(0.0, c), ParameterError);
}

TEST_CASE("sweeps") {
  const SimConfig c = small_config(6);
  const std::vector<double> lambdas{0.02};
  const auto rows = sweep_lambda_r(lambdas, 15.0, 30.0, c);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].params.lambda_r == 0.02);
  CHECK(rows[0].simulated.samples == 6);

  const std::vector<double> rf{20.0, 30.0};
  const std::vector<double> rr{10.0, 15.0};
  const auto rf_rows = sweep_r_f(rf, rr, 0.05, c);
  REQUIRE(rf_rows.size() == 4);
  CHECK(rf_rows[1].params.r_r == 10.0);
  CHECK(rf_rows[1].params.r_f == 30.0);
  CHECK(rf_rows[2].params.r_r == 15.0);
  CHECK_THROWS_AS(sweep_lambda_r(std::vector<double>{}, 15.0, 30.0, c), ParameterError);
}

TEST_CASE("configuration errors") {
  SimConfig c = small_config();
  c.iterations = 0;
  CHECK_THROWS_AS(estimate_critical_density({0.02, 15.0, 30.0}, c), ParameterError);
  c = small_config();
  c.rule = SpanningRule{300.0};
  CHECK_THROWS_AS(estimate_critical_density({0.02, 15.0, 30.0}, c), ParameterError);
  CHECK_THROWS_AS(estimate_critical_density({0.02, 40.0, 30.0}, small_config()), ParameterError);
}
