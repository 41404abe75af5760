#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

#include "oracles.hpp"
#include "wetperc/geometry.hpp"
#include "wetperc/rng.hpp"

using namespace wetperc;

TEST_CASE("region rejects degenerate windows") {
  CHECK_THROWS_AS(Region(0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(Region(1.0, -2.0), ParameterError);
  CHECK_THROWS_AS(Region(std::numeric_limits<double>::quiet_NaN(), 1.0), ParameterError);
  CHECK_THROWS_AS(Region(std::numeric_limits<double>::infinity(), 1.0), ParameterError);
  const Region r(30.0, 20.0);
  CHECK(r.area() == 600.0);
  CHECK(r.contains({30.0, 0.0}));
  CHECK_FALSE(r.contains({30.0001, 0.0}));
}

TEST_CASE("sample_ppp basics") {
  const Region r(100.0, 50.0);
  CHECK_THROWS_AS(sample_ppp(-1.0, r, 1), ParameterError);
  CHECK(sample_ppp(0.0, r, 1).empty());

  const PointSet a = sample_ppp(0.05, r, 42);
  const PointSet b = sample_ppp(0.05, r, 42);
  CHECK(a.points == b.points);
  CHECK(a.seed == 42);
  CHECK(a.density == 0.05);
  for (const Point& p : a.points) CHECK(r.contains(p));
  CHECK(sample_ppp(0.05, r, 43).points != a.points);
}

TEST_CASE("sample_ppp counts are Poisson") {
  const Region r(10.0, 10.0);
  const double mean = 0.4 * r.area();
  constexpr int kRuns = 4000;
  std::vector<double> counts;
  for (int i = 0; i < kRuns; ++i) {
    counts.push_back(static_cast<double>(sample_ppp(0.4, r, derive_seed(7, i, Stream::kDevices)).size()));
  }
  const double m = std::accumulate(counts.begin(), counts.end(), 0.0) / kRuns;
  double var = 0.0;
  for (double c : counts) var += (c - m) * (c - m);
  var /= kRuns - 1;
  CHECK(std::abs(m - mean) < 4.0 * std::sqrt(mean / kRuns));
  // Dispersion index of a Poisson sample is ~ 1 with sd sqrt(2 / (n - 1)).
  CHECK(std::abs(var / m - 1.0) < 4.0 * std::sqrt(2.0 / (kRuns - 1)));
}

TEST_CASE("sample_ppp locations are uniform (chi-square over 8x8 cells)") {
  const Region r(80.0, 40.0);
  constexpr int kCells = 8;
  std::vector<double> hist(kCells * kCells, 0.0);
  std::size_t total = 0;
  for (int s = 0; s < 50; ++s) {
    for (const Point& p : sample_ppp(1.0, r, derive_seed(3, s, Stream::kStations)).points) {
      const int cx = std::min(kCells - 1, static_cast<int>(p.x / r.width() * kCells));
      const int cy = std::min(kCells - 1, static_cast<int>(p.y / r.height() * kCells));
      hist[cy * kCells + cx] += 1.0;
      ++total;
    }
  }
  const double expected = static_cast<double>(total) / hist.size();
  double chi2 = 0.0;
  for (double h : hist) chi2 += (h - expected) * (h - expected) / expected;
  const boost::math::chi_squared dist(hist.size() - 1);
  CHECK(chi2 < boost::math::quantile(dist, 0.999));
}

TEST_CASE("sample_ppp quadrants are exchangeable") {
  // Permutation test: swapping quadrant labels must not change the count
  // distribution, so the largest pairwise mean difference stays small.
  const Region r(60.0, 60.0);
  std::array<double, 4> sums{};
  constexpr int kRuns = 400;
  for (int s = 0; s < kRuns; ++s) {
    for (const Point& p : sample_ppp(0.1, r, derive_seed(11, s, Stream::kDevices)).points) {
      sums[(p.x >= 30.0 ? 1 : 0) + (p.y >= 30.0 ? 2 : 0)] += 1.0;
    }
  }
  const double quadrant_mean = 0.1 * 900.0;
  for (double s : sums) {
    CHECK(std::abs(s / kRuns - quadrant_mean) < 4.0 * std::sqrt(quadrant_mean / kRuns));
  }
}

TEST_CASE("grid index matches brute force") {
  Engine rng = make_engine(99);
  std::uniform_real_distribution<double> u(-50.0, 150.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 500; ++i) pts.push_back({u(rng), u(rng)});
    const double cell = 3.0 + trial;
    const GridIndex index = build_grid_index(pts, cell);
    CHECK(index.size() == pts.size());
    const auto sizes = index.bucket_sizes();
    CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == pts.size());
    CHECK(sizes.size() == index.bucket_count());
    for (int q = 0; q < 30; ++q) {
      // Query centres may lie well outside the indexed box.
      const Point c{u(rng) * 1.5, u(rng) * 1.5};
      for (double radius : {0.0, 1.0, cell, 2.5 * cell, 40.0}) {
        CHECK(index.neighbors_within(c, radius) == oracle::neighbors_within(pts, c, radius));
      }
    }
  }
}

TEST_CASE("grid index uses closed balls") {
  const std::vector<Point> pts{{0.0, 0.0}, {3.0, 4.0}, {6.0, 8.0}};
  const GridIndex index = build_grid_index(pts, 5.0);
  CHECK(index.neighbors_within({0.0, 0.0}, 5.0) == std::vector<std::uint32_t>{0, 1});
  CHECK(index.neighbors_within({3.0, 4.0}, 5.0) == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(index.neighbors_within({0.0, 0.0}, 4.999999).size() == 1);
}

TEST_CASE("grid index grows by insertion and clamps outliers") {
  GridIndex index(2.0, 0.0, 0.0, 10.0, 10.0);
  CHECK(index.insert({1.0, 1.0}) == 0);
  CHECK(index.insert({-30.0, 5.0}) == 1);
  CHECK(index.insert({12.0, 12.0}) == 2);
  CHECK(index.neighbors_within({-29.0, 5.0}, 1.0) == std::vector<std::uint32_t>{1});
  CHECK(index.neighbors_within({11.0, 11.0}, 1.5) == std::vector<std::uint32_t>{2});
  CHECK(index.point(1) == Point{-30.0, 5.0});
}

TEST_CASE("grid index with no points") {
  const GridIndex index = build_grid_index(std::vector<Point>{}, 1.0);
  CHECK(index.size() == 0);
  CHECK(index.neighbors_within({0.0, 0.0}, 10.0).empty());
}
