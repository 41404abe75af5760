#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wetperc {

// Thrown for any violated parameter precondition (negative density, r_r > r_f, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(Point a, Point b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) noexcept { return std::sqrt(squared_distance(a, b)); }

// Axis-aligned simulation window [0, width] x [0, height].
class Region {
 public:
  Region(double width, double height);

  double width() const noexcept { return width_; }
  double height() const noexcept { return height_; }
  double area() const noexcept { return width_ * height_; }
  Point center() const noexcept { return {0.5 * width_, 0.5 * height_}; }
  bool contains(Point p) const noexcept {
    return p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_;
  }

  friend bool operator==(const Region&, const Region&) = default;

 private:
  double width_;
  double height_;
};

// One realization of a homogeneous Poisson point process.
struct PointSet {
  std::vector<Point> points;
  double density = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  const Point& operator[](std::size_t i) const { return points[i]; }
};

// Draws N ~ Poisson(density * area) and then N i.i.d. uniform points.
PointSet sample_ppp(double density, const Region& region, std::uint64_t seed);

// Uniform cell list for fixed-radius queries. Cells are dense over a bounding
// box; points outside the box are clamped into the border cells, which keeps
// queries exact for any input.
class GridIndex {
 public:
  // Empty index over [min_x, max_x] x [min_y, max_y]; grows with insert().
  GridIndex(double cell_size, double min_x, double min_y, double max_x, double max_y);

  std::uint32_t insert(Point p);

  std::size_t size() const noexcept { return points_.size(); }
  double cell_size() const noexcept { return cell_size_; }
  const Point& point(std::size_t i) const { return points_[i]; }

  // Number of non-empty cells.
  std::size_t bucket_count() const;
  // Sizes of the non-empty cells, in cell order.
  std::vector<std::size_t> bucket_sizes() const;

  // Calls fn(index) for every point p with |p - center| <= radius.
  template <class Fn>
  void for_each_within(Point center, double radius, Fn&& fn) const {
    if (points_.empty() || radius < 0.0) return;
    const double r2 = radius * radius;
    const int cx0 = cell_x(center.x - radius);
    const int cx1 = cell_x(center.x + radius);
    const int cy0 = cell_y(center.y - radius);
    const int cy1 = cell_y(center.y + radius);
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        for (std::uint32_t idx : cells_[static_cast<std::size_t>(cy) * nx_ + cx]) {
          if (squared_distance(points_[idx], center) <= r2) fn(idx);
        }
      }
    }
  }

  // Indices of points within `radius` of `center` (closed ball), ascending.
  std::vector<std::uint32_t> neighbors_within(Point center, double radius) const;

 private:
  int cell_x(double x) const noexcept;
  int cell_y(double y) const noexcept;

  double cell_size_;
  double min_x_;
  double min_y_;
  int nx_;
  int ny_;
  std::vector<std::vector<std::uint32_t>> cells_;
  std::vector<Point> points_;
};

// Index over all points of `points`; point i keeps index i.
GridIndex build_grid_index(const PointSet& points, double cell_size);
GridIndex build_grid_index(const std::vector<Point>& points, double cell_size);

}  // namespace wetperc
