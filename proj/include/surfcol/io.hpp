#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "surfcol/colouring.hpp"
#include "surfcol/discharging.hpp"
#include "surfcol/edge_width.hpp"
#include "surfcol/embedding.hpp"
#include "surfcol/reducer.hpp"

namespace surfcol::io {

using Json = nlohmann::ordered_json;

/// A graph file: the embedding plus the `e1` flags carried on its edges.
struct GraphFile {
    EmbeddedGraph graph;
    EdgeClassing e1;
};

/// Canonical graph object:
///   {"vertices": [ids], "edges": [{"id","u","v","sign","e1"}],
///    "rotation": {"<vertex id>": [[edge id, end], ...]}}
/// `end` is 0 for the dart leaving `u` and 1 for the dart leaving `v`.
Json graph_to_json(const EmbeddedGraph& g, const EdgeClassing& e1);
/// Throws InvalidInput on any structural problem.  A missing `e1` flag
/// defaults to true; a missing `sign` defaults to +1.
GraphFile graph_from_json(const Json& j);

/// {"<vertex id>": [colours]}
Json lists_to_json(const ListAssignment& lists);
ListAssignment lists_from_json(const Json& j);

/// {"<vertex id>": colour}
Json colouring_to_json(const Colouring& phi);
Colouring colouring_from_json(const Json& j);

/// {"vertices": [ids], "edges": [ids]}
Json cycle_to_json(const EmbeddedGraph& g, const CycleInEmbedding& c);
Json width_to_json(const EmbeddedGraph& g, const WeightedWidthResult& r);
Json configuration_to_json(const Configuration& c);
Json trace_to_json(const ReductionTrace& t);
/// Transfers are included only when `log` is non-null.  Face indices refer
/// to the order of trace_faces(g).
Json discharge_to_json(const EmbeddedGraph& g, const DischargeReport& r, const ChargeLedger* log);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j, bool pretty = false);
/// Compact one-line rendering, or indented when `pretty`.
std::string dump(const Json& j, bool pretty);

} // namespace surfcol::io
