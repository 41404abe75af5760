#pragma once

// Brute-force reference implementations used to check the indexed paths.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "wetperc/graph.hpp"

namespace oracle {

using wetperc::Point;
using wetperc::PointSet;

inline std::vector<std::uint32_t> neighbors_within(const std::vector<Point>& pts, Point c,
                                                   double r) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    if (wetperc::squared_distance(pts[i], c) <= r * r) out.push_back(i);
  }
  return out;
}

inline std::vector<bool> activation(const PointSet& devices, const PointSet& stations, double r_f) {
  std::vector<bool> flag(devices.size(), false);
  for (std::size_t i = 0; i < devices.size(); ++i) {
    for (const Point& s : stations.points) {
      if (wetperc::squared_distance(devices[i], s) <= r_f * r_f) {
        flag[i] = true;
        break;
      }
    }
  }
  return flag;
}

inline wetperc::Adjacency edges(const PointSet& devices, const std::vector<bool>& active,
                                double r_r) {
  wetperc::Adjacency adj(devices.size());
  for (std::uint32_t i = 0; i < devices.size(); ++i) {
    if (!active[i]) continue;
    for (std::uint32_t j = 0; j < devices.size(); ++j) {
      if (i != j && active[j] && wetperc::squared_distance(devices[i], devices[j]) <= r_r * r_r) {
        adj[i].push_back(j);
      }
    }
  }
  return adj;
}

// Component label per vertex (-1 for inactive), labelled by smallest member.
inline std::vector<long> bfs_labels(const wetperc::Adjacency& adj, const std::vector<bool>& active) {
  std::vector<long> label(adj.size(), -1);
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (!active[s] || label[s] >= 0) continue;
    std::deque<std::size_t> q{s};
    label[s] = static_cast<long>(s);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop_front();
      for (auto v : adj[u]) {
        if (label[v] < 0) {
          label[v] = static_cast<long>(s);
          q.push_back(v);
        }
      }
    }
  }
  return label;
}

// Canonical labels from a DSU: the smallest member of each root's class.
inline std::vector<long> dsu_labels(const wetperc::DsuState& dsu) {
  std::map<std::size_t, long> smallest;
  std::vector<long> label(dsu.slot_count(), -1);
  for (std::size_t i = 0; i < dsu.slot_count(); ++i) {
    if (!dsu.is_member(i)) continue;
    const auto root = dsu.find(i);
    auto it = smallest.find(root);
    if (it == smallest.end()) it = smallest.emplace(root, static_cast<long>(i)).first;
    label[i] = it->second;
  }
  return label;
}

}  // namespace oracle
