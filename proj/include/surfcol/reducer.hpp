#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "surfcol/colouring.hpp"
#include "surfcol/embedding.hpp"
#include "surfcol/errors.hpp"
#include "surfcol/rational.hpp"

namespace surfcol {

enum class ConfigKind {
    NONE,
    LOW_E1,              ///< 8^- vertex with at most three E1-edges
    SATURATION,          ///< E1 pair uv, vw consecutive at v with uw missing
    DEG3MINUS,           ///< 3^- vertex
    FOUR_ADJ_8MINUS,     ///< 4-vertex adjacent to an 8^- vertex
    FIVE_E1FOUR_7MINUS,  ///< 5-vertex with four E1-edges, one to a 7^- vertex
    FIVE_ADJ_6_7,        ///< 5-vertex adjacent to a 7^- u and a distinct 6^- w
    TRIANGULAR6_CLUSTER, ///< triangular 6-vertex with only triangular 6-neighbours
};

std::string to_string(ConfigKind k);
ConfigKind parse_config_kind(const std::string& s);

/// A detected configuration.  All vertices are ids.
struct Configuration {
    ConfigKind kind = ConfigKind::NONE;
    VertexId anchor = -1;
    /// Neighbours of the anchor in the labelling used by the matching proof,
    /// e.g. (u, v1, v2, v3) for FOUR_ADJ_8MINUS or (v1..v6) for the cluster.
    /// For SATURATION this is (u, w).
    std::vector<VertexId> labels;
    /// Chords to embed in the vacated disk (before skipping existing edges).
    std::vector<std::pair<VertexId, VertexId>> chords;
    /// Candidate S-sets tried by the extension script after S = {}.
    std::vector<std::vector<VertexId>> s_sets;
    /// Vertices the script may recolour.
    std::vector<VertexId> recolour_targets;
    /// True when the script's recolouring measure is |phi(N_E1(v))|,
    /// false for |phi(N(v))|.
    bool measure_e1 = false;

    bool found() const { return kind != ConfigKind::NONE; }
};

/// Scans the triggers in priority order.  LOW_E1 and DEG3MINUS form a single
/// tier (every 3^- vertex is also a LOW_E1 vertex); a vertex of degree at
/// most three is reported as DEG3MINUS.  Within a tier the lowest anchor id
/// wins.
Configuration detect_configuration(const EmbeddedGraph& g, const EdgeClassing& e1);

/// One surgery of the reduction.
struct ReductionStep {
    Configuration config;
    std::optional<VertexId> deleted;
    std::vector<EdgeId> added;           ///< new (non-E1) edge ids in the child
    std::vector<std::pair<VertexId, VertexId>> skipped; ///< chords already present
    EmbeddedGraph child;
    EdgeClassing child_e1;
};

/// Applies the surgery for `cfg`.  Throws PreconditionError when `cfg` no
/// longer matches `g`.
ReductionStep reduce_once(const EmbeddedGraph& g, const EdgeClassing& e1, const Configuration& cfg);

/// Colour for `v` from L(v) minus phi(N(v)) and phi(N_S), where phi colours
/// g - v.  Throws PreconditionError unless S is a subset of N_E1(v) meeting
/// every monochromatic pair of N_E1(v).
std::optional<Colour> extend_at_vertex(const EmbeddedGraph& g, const EdgeClassing& e1, VertexId v,
                                       const Colouring& phi_child, const std::vector<VertexId>& s,
                                       const ListAssignment& lists);

/// New colour for `v` outside `forbidden`.  Requires phi(N(v) + v) within
/// `forbidden` and the E1-neighbours of v to be rainbow.
std::optional<Colour> recolour_vertex(const EmbeddedGraph& g, const EdgeClassing& e1, const Colouring& phi,
                                      VertexId v, const std::set<Colour>& forbidden,
                                      const ListAssignment& lists);

/// What happened when a step was undone.
struct ExtensionRecord {
    ConfigKind kind = ConfigKind::NONE;
    VertexId anchor = -1;
    std::optional<VertexId> deleted;
    std::vector<EdgeId> added;
    Colour colour = 0;                        ///< colour given to the deleted vertex
    std::vector<VertexId> s_used;             ///< S-set of the successful extension
    std::vector<std::pair<VertexId, Colour>> recoloured; ///< (vertex, new colour)
    /// "none" (no vertex deleted), "script", "safety-net" or "safety-net-recolour".
    std::string path = "none";
    /// phi(N(v)) in the final colouring of the child, for auditing.
    std::vector<Colour> neighbour_colours;
};

struct ReductionTrace {
    std::vector<ExtensionRecord> steps; ///< in reduction order
    /// "rainbow", "exact" or "empty" per base graph reached.
    std::vector<std::string> base_cases;
};

/// Raised when an extension cannot be completed; carries the trace so far.
class ReductionFailure : public Error {
public:
    ReductionFailure(const std::string& what, ReductionTrace trace);
    ReductionTrace trace;
};

struct SolveOptions {
    Rational epsilon{1, 43};
    /// When false, ew_2 >= 12(g-2)/epsilon is verified with the exact oracle
    /// before solving.
    bool waive_ew_check = true;
};

/// Reduction-and-extension solver.  Lists are normalised to their nine
/// smallest colours.  Throws Error with the trace when an extension cannot
/// be completed.
Colouring solve_by_reduction(const EmbeddedGraph& g, const EdgeClassing& e1, const ListAssignment& lists,
                             const SolveOptions& options = {}, ReductionTrace* trace = nullptr);

} // namespace surfcol
