#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "surfcol/errors.hpp"

namespace surfcol {

using VertexId = int;
using EdgeId = int;

/// Edge record as it appears in the canonical file format.
struct EdgeSpec {
    EdgeId id = 0;
    VertexId u = 0;
    VertexId v = 0;
    int sign = 1;

    bool operator==(const EdgeSpec&) const = default;
};

/// One end of an edge: `end == 0` is the dart leaving `u`, `end == 1` leaves `v`.
struct DartSpec {
    EdgeId edge = 0;
    int end = 0;

    bool operator==(const DartSpec&) const = default;
};

using RotationSpec = std::map<VertexId, std::vector<DartSpec>>;

/// Signed rotation system describing a cellular embedding of a connected or
/// disconnected multigraph in a (possibly non-orientable) surface.
///
/// Vertices and edges carry caller-chosen ids; algorithms address them by
/// dense indices (`0..vertex_count()`, `0..edge_count()`), ordered by id.
/// Dart `d` of edge index `e` is `2*e + end`; its reversal is `d ^ 1`.
/// Instances are immutable; surgery returns new graphs.
class EmbeddedGraph {
public:
    EmbeddedGraph() = default;

    /// Validates and builds. Throws InvalidInput on duplicate ids, unknown
    /// endpoints, signs outside {+1,-1}, or a dart missing/duplicated/placed
    /// at the wrong vertex in the rotation.
    static EmbeddedGraph build(std::vector<VertexId> vertices,
                               std::vector<EdgeSpec> edges,
                               const RotationSpec& rotation);

    int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int dart_count() const { return 2 * edge_count(); }

    VertexId vertex_id(int v) const { return vertex_ids_[v]; }
    EdgeId edge_id(int e) const { return edges_[e].id; }
    std::optional<int> find_vertex(VertexId id) const;
    std::optional<int> find_edge_by_id(EdgeId id) const;
    int vertex_index(VertexId id) const;
    int edge_index(EdgeId id) const;
    const std::vector<VertexId>& vertex_ids() const { return vertex_ids_; }

    int edge_u(int e) const { return edge_ends_[e].first; }
    int edge_v(int e) const { return edge_ends_[e].second; }
    int edge_sign(int e) const { return edges_[e].sign; }
    bool is_loop(int e) const { return edge_u(e) == edge_v(e); }
    int other_end(int e, int v) const { return edge_u(e) == v ? edge_v(e) : edge_u(e); }

    static int dart_edge(int d) { return d >> 1; }
    static int dart_end(int d) { return d & 1; }
    static int reverse(int d) { return d ^ 1; }
    static int make_dart(int e, int end) { return 2 * e + end; }
    int tail(int d) const { return dart_end(d) == 0 ? edge_u(dart_edge(d)) : edge_v(dart_edge(d)); }
    int head(int d) const { return tail(reverse(d)); }

    std::span<const int> rotation(int v) const { return rotation_[v]; }
    int degree(int v) const { return static_cast<int>(rotation_[v].size()); }
    /// Next dart around `tail(d)` in rotation order.
    int succ(int d) const;
    int pred(int d) const;
    int rotation_position(int d) const { return rotation_pos_[d]; }

    /// Neighbour indices of `v` in rotation order (with repetition for multi-edges).
    std::vector<int> neighbours(int v) const;
    /// Index of some edge joining `a` and `b`, lowest index first.
    std::optional<int> find_edge(int a, int b) const;
    bool adjacent(int a, int b) const { return find_edge(a, b).has_value(); }

    /// No loops and no parallel edges.
    bool is_simple() const { return simple_; }
    bool is_connected() const;

    std::vector<EdgeSpec> edge_specs() const { return edges_; }
    RotationSpec rotation_spec() const;
    EdgeId max_edge_id() const;

private:
    std::vector<VertexId> vertex_ids_;
    std::vector<EdgeSpec> edges_;
    std::vector<std::pair<int, int>> edge_ends_;
    std::vector<std::vector<int>> rotation_;
    std::vector<int> rotation_pos_;
    std::vector<std::map<int, int>> adjacency_; // neighbour -> lowest edge index
    bool simple_ = true;
};

/// The distinguished edge class E1, stored by edge id so that it survives
/// surgery (children keep the ids of surviving edges).
class EdgeClassing {
public:
    EdgeClassing() = default;
    explicit EdgeClassing(std::vector<EdgeId> ids);

    static EdgeClassing all_edges(const EmbeddedGraph& g);

    bool contains(EdgeId id) const;
    bool contains_index(const EmbeddedGraph& g, int e) const { return contains(g.edge_id(e)); }
    const std::vector<EdgeId>& ids() const { return ids_; }
    std::size_t size() const { return ids_.size(); }

    EdgeClassing with(EdgeId id) const;
    EdgeClassing without(std::span<const EdgeId> ids) const;
    /// Drops ids that are not edges of `g`.
    EdgeClassing restricted_to(const EmbeddedGraph& g) const;
    bool subset_of(const EdgeClassing& other) const;

    bool operator==(const EdgeClassing&) const = default;

private:
    std::vector<EdgeId> ids_;
};

/// Face-walk state: the walk leaves `tail(dart)` along `dart` carrying local
/// orientation `orient` (+1 or -1).  The walk entered `tail(dart)` through
/// `entry_dart(g, corner)`, so the corner is the angle between those two darts.
struct Corner {
    int dart = 0;
    int orient = 1;

    bool operator==(const Corner&) const = default;
};

struct Face {
    std::vector<Corner> corners;
    int length() const { return static_cast<int>(corners.size()); }
};

int entry_dart(const EmbeddedGraph& g, Corner c);

/// Traces every face of the signed rotation system.  Next-dart rule: after
/// traversing edge `e` the orientation is multiplied by `sign(e)` and the walk
/// continues with the rotation successor (orientation +1) or predecessor
/// (orientation -1) of the arrival dart.  One walk is returned per mirror
/// pair; the lengths sum to twice the edge count.
std::vector<Face> trace_faces(const EmbeddedGraph& g);

/// 2 - (v - e + f). Throws PreconditionError on disconnected or empty input.
int euler_genus(const EmbeddedGraph& g);
bool is_orientable(const EmbeddedGraph& g);

/// Simple closed walk: `edges[i]` joins `vertices[i]` and `vertices[i+1 mod k]`.
struct CycleInEmbedding {
    std::vector<int> vertices;
    std::vector<int> edges;

    int length() const { return static_cast<int>(edges.size()); }
};

/// Throws PreconditionError unless `c` is a simple cycle of `g`.
void validate_cycle(const EmbeddedGraph& g, const CycleInEmbedding& c);
bool is_two_sided(const EmbeddedGraph& g, const CycleInEmbedding& c);

/// True iff `c` is two-sided and cutting along it leaves two pieces, one of
/// which is a disk (Euler characteristic 1).
bool is_contractible(const EmbeddedGraph& g, const CycleInEmbedding& c);

/// Face tracing computed once, reusable across many contractibility queries.
class ContractibilityTester {
public:
    explicit ContractibilityTester(const EmbeddedGraph& g);
    bool contractible(const CycleInEmbedding& c) const;
    /// Same, for cycles already known to be simple (skips validation).
    bool contractible_unchecked(std::span<const int> cycle_vertices,
                                std::span<const int> cycle_edges) const;

private:
    const EmbeddedGraph* g_;
    int face_count_ = 0;
    std::vector<std::pair<int, int>> edge_faces_; // faces on the two sides of each edge
    std::vector<std::vector<int>> vertex_faces_;  // faces at each corner of each vertex
};

struct SurgeryResult {
    EmbeddedGraph graph;
    EdgeClassing e1;
    std::vector<EdgeId> added;
};

/// Adds the non-E1 edge uw inside a face in which uv and vw are consecutive
/// at v, so that uvwu bounds a new triangular face.
SurgeryResult add_cofacial_edge(const EmbeddedGraph& g, const EdgeClassing& e1,
                                VertexId u, VertexId v, VertexId w);

/// Deletes v and embeds the chord set in the disk v vacated.  Chords must join
/// E1-neighbours of v, must not already be edges, and must not cross with
/// respect to the rotation at v.  The returned classing is E1 minus delta(v);
/// chords are non-E1.
SurgeryResult replace_star(const EmbeddedGraph& g, const EdgeClassing& e1, VertexId v,
                           const std::vector<std::pair<VertexId, VertexId>>& chords);

/// Inserts a new edge between two corners of the same face walk, splitting
/// that face in two.  Used by generators (edge flips) and by surgery.
EmbeddedGraph insert_edge_between_corners(const EmbeddedGraph& g, Corner a, Corner b,
                                          EdgeId new_id);

EmbeddedGraph remove_edge(const EmbeddedGraph& g, int e);
EmbeddedGraph remove_vertex(const EmbeddedGraph& g, int v);

} // namespace surfcol
