#include "wetperc/realization_io.hpp"

#include <ostream>

namespace wetperc {

namespace {

nlohmann::json points_json(const PointSet& set) {
  auto arr = nlohmann::json::array();
  for (const Point& p : set.points) arr.push_back({p.x, p.y});
  return arr;
}

PointSet points_from(const nlohmann::json& arr) {
  PointSet set;
  for (const auto& p : arr) set.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return set;
}

}  // namespace

nlohmann::json realization_to_json(const WcRgg& graph, const Region& region) {
  nlohmann::json doc;
  doc["schema_version"] = kRealizationSchemaVersion;
  doc["region"] = {{"width_m", region.width()}, {"height_m", region.height()}};
  doc["r_r_m"] = graph.r_r;
  doc["r_f_m"] = graph.r_f;
  doc["devices"] = points_json(graph.devices);
  doc["stations"] = points_json(graph.stations);
  auto active = nlohmann::json::array();
  for (bool a : graph.active) active.push_back(a ? 1 : 0);
  doc["active"] = std::move(active);
  auto edges = nlohmann::json::array();
  for (std::size_t i = 0; i < graph.adjacency.size(); ++i) {
    for (std::uint32_t j : graph.adjacency[i]) {
      if (i < j) edges.push_back({i, j});
    }
  }
  doc["edges"] = std::move(edges);
  return doc;
}

WcRgg realization_from_json(const nlohmann::json& doc) {
  if (doc.at("schema_version").get<int>() != kRealizationSchemaVersion) {
    throw ParameterError("unsupported realization schema version");
  }
  WcRgg g = build_wc_rgg(points_from(doc.at("devices")), points_from(doc.at("stations")),
                         doc.at("r_r_m").get<double>(), doc.at("r_f_m").get<double>());
  const auto& active = doc.at("active");
  if (active.size() != g.active.size()) throw ParameterError("active flags do not match devices");
  for (std::size_t i = 0; i < active.size(); ++i) {
    if ((active[i].get<int>() != 0) != g.active[i]) {
      throw ParameterError("stored activation disagrees with recomputed activation");
    }
  }
  if (doc.at("edges").size() != g.edge_count()) {
    throw ParameterError("stored edges disagree with recomputed edges");
  }
  return g;
}

void write_realization(std::ostream& os, const WcRgg& graph, const Region& region) {
  os << realization_to_json(graph, region).dump(1) << '\n';
}

}  // namespace wetperc
