#include "wetperc/graph.hpp"

#include <algorithm>
#include <numeric>

namespace wetperc {

void validate_ranges(double r_r, double r_f) {
  if (!(r_r > 0.0) || !std::isfinite(r_r)) throw ParameterError("r_r must be positive");
  if (!(r_f > 0.0) || !std::isfinite(r_f)) throw ParameterError("r_f must be positive");
  if (r_r > r_f) throw ParameterError("r_r must not exceed r_f");
}

ActivationFlags activate_devices(const PointSet& devices, const PointSet& stations, double r_f) {
  if (!(r_f > 0.0)) throw ParameterError("r_f must be positive");
  ActivationFlags active(devices.size(), false);
  if (stations.empty() || devices.empty()) return active;
  // Index the devices and sweep each WET disk; cheaper than a nearest-station
  // query per device because stations are much sparser.
  const GridIndex index = build_grid_index(devices, r_f);
  for (const Point& s : stations.points) {
    index.for_each_within(s, r_f, [&](std::uint32_t i) { active[i] = true; });
  }
  return active;
}

Adjacency build_edges(const PointSet& devices, const ActivationFlags& active, double r_r) {
  if (!(r_r > 0.0)) throw ParameterError("r_r must be positive");
  if (active.size() != devices.size()) {
    throw ParameterError("activation flags do not match the device set");
  }
  Adjacency adj(devices.size());
  std::vector<Point> live;
  std::vector<std::uint32_t> live_id;
  for (std::size_t i = 0; i < devices.size(); ++i) {
    if (active[i]) {
      live.push_back(devices[i]);
      live_id.push_back(static_cast<std::uint32_t>(i));
    }
  }
  const GridIndex index = build_grid_index(live, r_r);
  for (std::size_t k = 0; k < live.size(); ++k) {
    auto& row = adj[live_id[k]];
    index.for_each_within(live[k], r_r, [&](std::uint32_t j) {
      if (j != k) row.push_back(live_id[j]);
    });
    std::sort(row.begin(), row.end());
  }
  return adj;
}

std::size_t WcRgg::active_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
}

std::size_t WcRgg::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency) twice += row.size();
  return twice / 2;
}

WcRgg build_wc_rgg(PointSet devices, PointSet stations, double r_r, double r_f) {
  validate_ranges(r_r, r_f);
  WcRgg g;
  g.active = activate_devices(devices, stations, r_f);
  g.adjacency = build_edges(devices, g.active, r_r);
  g.devices = std::move(devices);
  g.stations = std::move(stations);
  g.r_r = r_r;
  g.r_f = r_f;
  return g;
}

DsuState::DsuState(std::size_t slots)
    : parent_(slots), rank_(slots, 0), size_(slots, 0), extent_(slots) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

void DsuState::activate(std::size_t i, Point p) {
  if (is_member(i)) return;
  size_[i] = 1;
  extent_[i] = {p.x, p.x, p.y, p.y};
  ++members_;
  ++components_;
}

std::size_t DsuState::push(Point p) {
  const std::size_t i = parent_.size();
  parent_.push_back(i);
  rank_.push_back(0);
  size_.push_back(0);
  extent_.push_back({});
  activate(i, p);
  return i;
}

std::size_t DsuState::find(std::size_t i) {
  std::size_t root = i;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[i] != root) {
    const std::size_t next = parent_[i];
    parent_[i] = root;
    i = next;
  }
  return root;
}

std::size_t DsuState::find(std::size_t i) const {
  while (parent_[i] != i) i = parent_[i];
  return i;
}

std::size_t DsuState::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return a;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  if (rank_[a] == rank_[b]) ++rank_[a];
  parent_[b] = a;
  size_[a] += size_[b];
  size_[b] = 0;
  Extent& e = extent_[a];
  const Extent& o = extent_[b];
  e.min_x = std::min(e.min_x, o.min_x);
  e.max_x = std::max(e.max_x, o.max_x);
  e.min_y = std::min(e.min_y, o.min_y);
  e.max_y = std::max(e.max_y, o.max_y);
  --components_;
  return a;
}

std::vector<std::size_t> DsuState::roots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    if (parent_[i] == i && size_[i] > 0) out.push_back(i);
  }
  return out;
}

DsuState connected_components(const WcRgg& graph) {
  DsuState dsu(graph.devices.size());
  for (std::size_t i = 0; i < graph.devices.size(); ++i) {
    if (graph.active[i]) dsu.activate(i, graph.devices[i]);
  }
  for (std::size_t i = 0; i < graph.adjacency.size(); ++i) {
    for (std::uint32_t j : graph.adjacency[i]) {
      if (j > i) dsu.unite(i, j);
    }
  }
  return dsu;
}

void validate_rule(const SpanningRule& rule, const Region& region) {
  if (!(rule.margin >= 0.0) ||
      !(rule.margin < 0.5 * std::min(region.width(), region.height()))) {
    throw ParameterError("spanning margin must lie in [0, min(width, height) / 2)");
  }
}

bool extent_spans(const Extent& e, const Region& region, const SpanningRule& rule) {
  const bool horizontal = e.min_x <= rule.margin && e.max_x >= region.width() - rule.margin;
  const bool vertical = e.min_y <= rule.margin && e.max_y >= region.height() - rule.margin;
  switch (rule.direction) {
    case SpanDirection::kHorizontal:
      return horizontal;
    case SpanDirection::kVertical:
      return vertical;
    case SpanDirection::kEither:
      return horizontal || vertical;
    case SpanDirection::kBoth:
      return horizontal && vertical;
  }
  return false;
}

bool spans(const DsuState& dsu, const Region& region, const SpanningRule& rule) {
  for (std::size_t root : dsu.roots()) {
    if (extent_spans(dsu.extent(root), region, rule)) return true;
  }
  return false;
}

namespace {

double checked_ranges(double r_r, double r_f) {
  validate_ranges(r_r, r_f);
  return r_r;
}

}  // namespace

IncrementalWcRgg::IncrementalWcRgg(PointSet devices, double r_r, double r_f, Region region,
                                   SpanningRule rule)
    : devices_(std::move(devices)),
      r_r_(r_r),
      r_f_(r_f),
      region_(region),
      rule_(rule),
      index_(build_grid_index(devices_, checked_ranges(r_r, r_f))),
      active_(devices_.size(), false),
      dsu_(devices_.size()) {
  validate_rule(rule, region);
}

void IncrementalWcRgg::link(std::size_t device) {
  const Point p = devices_[device];
  index_.for_each_within(p, r_r_, [&](std::uint32_t j) {
    if (j != device && active_[j]) dsu_.unite(device, j);
  });
  if (!spanning_) spanning_ = extent_spans(dsu_.extent(dsu_.find(device)), region_, rule_);
}

std::size_t IncrementalWcRgg::add_station(Point station) {
  stations_.push_back(station);
  std::vector<std::uint32_t> fresh;
  index_.for_each_within(station, r_f_, [&](std::uint32_t i) {
    if (!active_[i]) fresh.push_back(i);
  });
  // Activate all first, then link: pairs of fresh devices get joined too.
  for (std::uint32_t i : fresh) {
    active_[i] = true;
    dsu_.activate(i, devices_[i]);
  }
  for (std::uint32_t i : fresh) link(i);
  return fresh.size();
}

IncrementalRgg::IncrementalRgg(double r_r, Region region, SpanningRule rule)
    : r_r_(r_r),
      region_(region),
      rule_(rule),
      index_(checked_ranges(r_r, r_r), 0.0, 0.0, region.width(), region.height()) {
  validate_rule(rule, region);
}

bool IncrementalRgg::add_device(Point p) {
  const std::size_t id = dsu_.push(p);
  index_.for_each_within(p, r_r_, [&](std::uint32_t j) { dsu_.unite(id, j); });
  index_.insert(p);
  if (!spanning_) spanning_ = extent_spans(dsu_.extent(dsu_.find(id)), region_, rule_);
  return spanning_;
}

}  // namespace wetperc
