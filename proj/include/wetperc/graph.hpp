#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wetperc/geometry.hpp"

namespace wetperc {

using ActivationFlags = std::vector<bool>;
using Adjacency = std::vector<std::vector<std::uint32_t>>;

// flag[i] is true iff some station lies within r_f of device i.
ActivationFlags activate_devices(const PointSet& devices, const PointSet& stations, double r_f);

// Symmetric adjacency over active devices at pairwise distance <= r_r.
Adjacency build_edges(const PointSet& devices, const ActivationFlags& active, double r_r);

// WET-aware connectivity graph: vertices are devices inside some WET zone,
// edges join active devices within D2D range.
struct WcRgg {
  PointSet devices;
  PointSet stations;
  double r_r = 0.0;
  double r_f = 0.0;
  ActivationFlags active;
  Adjacency adjacency;

  std::size_t active_count() const;
  std::size_t edge_count() const;
};

// Throws ParameterError unless 0 < r_r <= r_f.
void validate_ranges(double r_r, double r_f);

WcRgg build_wc_rgg(PointSet devices, PointSet stations, double r_r, double r_f);

struct Extent {
  double min_x;
  double max_x;
  double min_y;
  double max_y;
};

// Disjoint-set forest over a fixed or growing set of slots. A slot becomes a
// member once activated; dormant slots belong to no component. Each root
// carries the component size and the bounding box of its members.
class DsuState {
 public:
  explicit DsuState(std::size_t slots = 0);

  // Turns dormant slot i into a singleton component located at p.
  void activate(std::size_t i, Point p);
  // Appends a new slot and activates it; returns its index.
  std::size_t push(Point p);

  std::size_t find(std::size_t i);
  std::size_t find(std::size_t i) const;
  // Merges the components of two members; returns the surviving root.
  std::size_t unite(std::size_t a, std::size_t b);

  bool is_member(std::size_t i) const { return size_[i] > 0 || parent_[i] != i; }
  std::size_t slot_count() const noexcept { return parent_.size(); }
  std::size_t member_count() const noexcept { return members_; }
  std::size_t component_count() const noexcept { return components_; }
  std::size_t component_size(std::size_t root) const { return size_[root]; }
  const Extent& extent(std::size_t root) const { return extent_[root]; }
  std::vector<std::size_t> roots() const;

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<std::size_t> size_;
  std::vector<Extent> extent_;
  std::size_t members_ = 0;
  std::size_t components_ = 0;
};

DsuState connected_components(const WcRgg& graph);

enum class SpanDirection { kHorizontal, kVertical, kEither, kBoth };

// A component spans when it reaches both boundary strips of width `margin`
// along the chosen direction(s). This is the finite-window stand-in for an
// infinite cluster.
struct SpanningRule {
  double margin = 0.0;
  SpanDirection direction = SpanDirection::kEither;
};

void validate_rule(const SpanningRule& rule, const Region& region);
bool extent_spans(const Extent& extent, const Region& region, const SpanningRule& rule);
bool spans(const DsuState& dsu, const Region& region, const SpanningRule& rule);

// WC-RGG built by inserting stations one at a time. Devices and radii are
// fixed; components only ever merge, so the spanning flag is monotone.
class IncrementalWcRgg {
 public:
  IncrementalWcRgg(PointSet devices, double r_r, double r_f, Region region, SpanningRule rule);

  // Activates the dormant devices within r_f of the station and links each to
  // its active neighbours within r_r. Returns the number of newly active devices.
  std::size_t add_station(Point station);

  bool spans() const noexcept { return spanning_; }
  const DsuState& components() const noexcept { return dsu_; }
  const ActivationFlags& active() const noexcept { return active_; }
  const std::vector<Point>& stations() const noexcept { return stations_; }
  const PointSet& devices() const noexcept { return devices_; }

 private:
  void link(std::size_t device);

  PointSet devices_;
  double r_r_;
  double r_f_;
  Region region_;
  SpanningRule rule_;
  GridIndex index_;
  ActivationFlags active_;
  DsuState dsu_;
  std::vector<Point> stations_;
  bool spanning_ = false;
};

// Plain RGG grown by inserting always-active devices (the dense-station limit).
class IncrementalRgg {
 public:
  IncrementalRgg(double r_r, Region region, SpanningRule rule);

  // Inserts a device and returns whether the graph spans afterwards.
  bool add_device(Point p);

  bool spans() const noexcept { return spanning_; }
  std::size_t size() const noexcept { return index_.size(); }
  const DsuState& components() const noexcept { return dsu_; }

 private:
  double r_r_;
  Region region_;
  SpanningRule rule_;
  GridIndex index_;
  DsuState dsu_;
  bool spanning_ = false;
};

}  // namespace wetperc
