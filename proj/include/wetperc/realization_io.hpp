#pragma once

#include <iosfwd>

#include <json.hpp>
#include "wetperc/geometry.hpp"
#include "wetperc/graph.hpp"

namespace wetperc {

inline constexpr int kRealizationSchemaVersion = 1;

// Debug dump of one realization for external plotting. See docs/schemas.md.
nlohmann::json realization_to_json(const WcRgg& graph, const Region& region);

// Rebuilds the graph from a dump. Activation and edges are recomputed from the
// points and radii, then checked against the stored ones.
WcRgg realization_from_json(const nlohmann::json& doc);

void write_realization(std::ostream& os, const WcRgg& graph, const Region& region);

}  // namespace wetperc
