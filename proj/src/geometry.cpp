#include "wetperc/geometry.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "wetperc/rng.hpp"

namespace wetperc {

namespace {

// Upper bound on dense cells; larger boxes get coarser cells.
constexpr double kMaxCells = 1 << 22;

}  // namespace

Region::Region(double width, double height) : width_(width), height_(height) {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
    throw ParameterError("region width and height must be positive and finite");
  }
}

PointSet sample_ppp(double density, const Region& region, std::uint64_t seed) {
  if (!(density >= 0.0) || !std::isfinite(density)) {
    throw ParameterError("point density must be non-negative and finite");
  }
  PointSet out;
  out.density = density;
  out.seed = seed;
  const double mean = density * region.area();
  if (mean <= 0.0) return out;

  Engine rng = make_engine(seed);
  std::poisson_distribution<std::int64_t> count_dist(mean);
  const auto n = count_dist(rng);
  std::uniform_real_distribution<double> ux(0.0, region.width());
  std::uniform_real_distribution<double> uy(0.0, region.height());
  out.points.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    out.points.push_back({x, y});
  }
  return out;
}

GridIndex::GridIndex(double cell_size, double min_x, double min_y, double max_x, double max_y)
    : cell_size_(cell_size), min_x_(min_x), min_y_(min_y) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw ParameterError("grid cell size must be positive");
  }
  const double span_x = std::max(max_x - min_x, 0.0);
  const double span_y = std::max(max_y - min_y, 0.0);
  while ((std::floor(span_x / cell_size_) + 1.0) * (std::floor(span_y / cell_size_) + 1.0) >
         kMaxCells) {
    cell_size_ *= 2.0;
  }
  nx_ = static_cast<int>(std::floor(span_x / cell_size_)) + 1;
  ny_ = static_cast<int>(std::floor(span_y / cell_size_)) + 1;
  cells_.resize(static_cast<std::size_t>(nx_) * ny_);
}

int GridIndex::cell_x(double x) const noexcept {
  const double c = std::floor((x - min_x_) / cell_size_);
  if (!(c >= 0.0)) return 0;
  return c >= nx_ - 1 ? nx_ - 1 : static_cast<int>(c);
}

int GridIndex::cell_y(double y) const noexcept {
  const double c = std::floor((y - min_y_) / cell_size_);
  if (!(c >= 0.0)) return 0;
  return c >= ny_ - 1 ? ny_ - 1 : static_cast<int>(c);
}

std::uint32_t GridIndex::insert(Point p) {
  const auto idx = static_cast<std::uint32_t>(points_.size());
  points_.push_back(p);
  cells_[static_cast<std::size_t>(cell_y(p.y)) * nx_ + cell_x(p.x)].push_back(idx);
  return idx;
}

std::size_t GridIndex::bucket_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](const auto& c) { return !c.empty(); }));
}

std::vector<std::size_t> GridIndex::bucket_sizes() const {
  std::vector<std::size_t> sizes;
  for (const auto& c : cells_) {
    if (!c.empty()) sizes.push_back(c.size());
  }
  return sizes;
}

std::vector<std::uint32_t> GridIndex::neighbors_within(Point center, double radius) const {
  std::vector<std::uint32_t> out;
  for_each_within(center, radius, [&](std::uint32_t i) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

GridIndex build_grid_index(const std::vector<Point>& points, double cell_size) {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  if (!points.empty()) {
    min_x = max_x = points.front().x;
    min_y = max_y = points.front().y;
    for (const Point& p : points) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  GridIndex index(cell_size, min_x, min_y, max_x, max_y);
  for (const Point& p : points) index.insert(p);
  return index;
}

GridIndex build_grid_index(const PointSet& points, double cell_size) {
  return build_grid_index(points.points, cell_size);
}

}  // namespace wetperc
