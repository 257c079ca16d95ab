#include "surfcol/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace surfcol {

namespace {

std::string dart_name(const DartSpec& d) {
    return "(" + std::to_string(d.edge) + "," + std::to_string(d.end) + ")";
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

} // namespace

// ---------------------------------------------------------------------------
// EmbeddedGraph

EmbeddedGraph EmbeddedGraph::build(std::vector<VertexId> vertices, std::vector<EdgeSpec> edges,
                                   const RotationSpec& rotation) {
    EmbeddedGraph g;
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw InvalidInput("duplicate vertex id");
    g.vertex_ids_ = std::move(vertices);

    std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i].id == edges[i - 1].id)
            throw InvalidInput("duplicate edge id " + std::to_string(edges[i].id));
    g.edges_ = std::move(edges);

    const int n = g.vertex_count();
    g.edge_ends_.reserve(g.edges_.size());
    for (const auto& e : g.edges_) {
        if (e.sign != 1 && e.sign != -1)
            throw InvalidInput("edge " + std::to_string(e.id) + " has sign outside {+1,-1}");
        auto u = g.find_vertex(e.u);
        auto v = g.find_vertex(e.v);
        if (!u || !v) throw InvalidInput("edge " + std::to_string(e.id) + " has an unknown endpoint");
        g.edge_ends_.emplace_back(*u, *v);
    }

    g.rotation_.assign(n, {});
    g.rotation_pos_.assign(g.dart_count(), -1);
    for (const auto& [vid, darts] : rotation) {
        auto v = g.find_vertex(vid);
        if (!v) throw InvalidInput("rotation given for unknown vertex " + std::to_string(vid));
        for (const auto& ds : darts) {
            auto e = g.find_edge_by_id(ds.edge);
            if (!e || (ds.end != 0 && ds.end != 1))
                throw InvalidInput("rotation at vertex " + std::to_string(vid) + " names unknown dart " +
                                   dart_name(ds));
            const int d = make_dart(*e, ds.end);
            if (g.tail(d) != *v)
                throw InvalidInput("dart " + dart_name(ds) + " listed at vertex " + std::to_string(vid) +
                                   " which is not its tail");
            if (g.rotation_pos_[d] != -1)
                throw InvalidInput("dart " + dart_name(ds) + " appears twice in the rotation");
            g.rotation_pos_[d] = static_cast<int>(g.rotation_[*v].size());
            g.rotation_[*v].push_back(d);
        }
    }
    for (int d = 0; d < g.dart_count(); ++d)
        if (g.rotation_pos_[d] == -1) {
            DartSpec ds{g.edges_[dart_edge(d)].id, dart_end(d)};
            throw InvalidInput("dart " + dart_name(ds) + " missing from the rotation");
        }

    g.adjacency_.assign(n, {});
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.edge_ends_[e];
        if (a == b) g.simple_ = false;
        if (!g.adjacency_[a].emplace(b, e).second && a != b) g.simple_ = false;
        if (a != b) g.adjacency_[b].emplace(a, e);
    }
    return g;
}

std::optional<int> EmbeddedGraph::find_vertex(VertexId id) const {
    auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
    if (it == vertex_ids_.end() || *it != id) return std::nullopt;
    return static_cast<int>(it - vertex_ids_.begin());
}

std::optional<int> EmbeddedGraph::find_edge_by_id(EdgeId id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const EdgeSpec& e, EdgeId x) { return e.id < x; });
    if (it == edges_.end() || it->id != id) return std::nullopt;
    return static_cast<int>(it - edges_.begin());
}

int EmbeddedGraph::vertex_index(VertexId id) const {
    auto v = find_vertex(id);
    if (!v) throw InvalidInput("unknown vertex id " + std::to_string(id));
    return *v;
}

int EmbeddedGraph::edge_index(EdgeId id) const {
    auto e = find_edge_by_id(id);
    if (!e) throw InvalidInput("unknown edge id " + std::to_string(id));
    return *e;
}

int EmbeddedGraph::succ(int d) const {
    const auto& r = rotation_[tail(d)];
    return r[(rotation_pos_[d] + 1) % r.size()];
}

int EmbeddedGraph::pred(int d) const {
    const auto& r = rotation_[tail(d)];
    return r[(rotation_pos_[d] + r.size() - 1) % r.size()];
}

std::vector<int> EmbeddedGraph::neighbours(int v) const {
    std::vector<int> out;
    out.reserve(rotation_[v].size());
    for (int d : rotation_[v]) out.push_back(head(d));
    return out;
}

std::optional<int> EmbeddedGraph::find_edge(int a, int b) const {
    auto it = adjacency_[a].find(b);
    if (it == adjacency_[a].end()) return std::nullopt;
    return it->second;
}

bool EmbeddedGraph::is_connected() const {
    const int n = vertex_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& [y, e] : adjacency_[x])
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
    }
    return count == n;
}

RotationSpec EmbeddedGraph::rotation_spec() const {
    RotationSpec out;
    for (int v = 0; v < vertex_count(); ++v) {
        auto& list = out[vertex_ids_[v]];
        for (int d : rotation_[v]) list.push_back({edges_[dart_edge(d)].id, dart_end(d)});
    }
    return out;
}

EdgeId EmbeddedGraph::max_edge_id() const {
    return edges_.empty() ? -1 : edges_.back().id;
}

// ---------------------------------------------------------------------------
// EdgeClassing

EdgeClassing::EdgeClassing(std::vector<EdgeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

EdgeClassing EdgeClassing::all_edges(const EmbeddedGraph& g) {
    std::vector<EdgeId> ids;
    for (int e = 0; e < g.edge_count(); ++e) ids.push_back(g.edge_id(e));
    return EdgeClassing(std::move(ids));
}

bool EdgeClassing::contains(EdgeId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

EdgeClassing EdgeClassing::with(EdgeId id) const {
    auto ids = ids_;
    ids.push_back(id);
    return EdgeClassing(std::move(ids));
}

EdgeClassing EdgeClassing::without(std::span<const EdgeId> drop) const {
    std::vector<EdgeId> sorted(drop.begin(), drop.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<EdgeId> ids;
    std::set_difference(ids_.begin(), ids_.end(), sorted.begin(), sorted.end(), std::back_inserter(ids));
    return EdgeClassing(std::move(ids));
}

EdgeClassing EdgeClassing::restricted_to(const EmbeddedGraph& g) const {
    std::vector<EdgeId> ids;
    for (EdgeId id : ids_)
        if (g.find_edge_by_id(id)) ids.push_back(id);
    return EdgeClassing(std::move(ids));
}

bool EdgeClassing::subset_of(const EdgeClassing& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

// ---------------------------------------------------------------------------
// Faces

int entry_dart(const EmbeddedGraph& g, Corner c) {
    return c.orient > 0 ? g.pred(c.dart) : g.succ(c.dart);
}

namespace {

int state_index(Corner c) { return 2 * c.dart + (c.orient > 0 ? 0 : 1); }

Corner next_state(const EmbeddedGraph& g, Corner c) {
    const int e = EmbeddedGraph::dart_edge(c.dart);
    const int orient = c.orient * g.edge_sign(e);
    const int arrival = EmbeddedGraph::reverse(c.dart);
    return {orient > 0 ? g.succ(arrival) : g.pred(arrival), orient};
}

Corner mirror_state(const EmbeddedGraph& g, Corner c) {
    const int e = EmbeddedGraph::dart_edge(c.dart);
    return {EmbeddedGraph::reverse(c.dart), -c.orient * g.edge_sign(e)};
}

} // namespace

std::vector<Face> trace_faces(const EmbeddedGraph& g) {
    std::vector<Face> faces;
    std::vector<char> used(2 * g.dart_count(), 0);
    for (int orient : {1, -1}) {
        for (int d = 0; d < g.dart_count(); ++d) {
            Corner start{d, orient};
            if (used[state_index(start)]) continue;
            Face f;
            Corner c = start;
            do {
                used[state_index(c)] = 1;
                f.corners.push_back(c);
                c = next_state(g, c);
            } while (!(c == start));
            // Discard the mirror orbit so each face is reported once.
            Corner m = mirror_state(g, start);
            if (!used[state_index(m)]) {
                Corner x = m;
                do {
                    used[state_index(x)] = 1;
                    x = next_state(g, x);
                } while (!(x == m));
            }
            faces.push_back(std::move(f));
        }
    }
    return faces;
}

int euler_genus(const EmbeddedGraph& g) {
    if (!g.is_connected()) throw PreconditionError("euler_genus requires a connected embedded graph");
    const int f = g.edge_count() == 0 ? 1 : static_cast<int>(trace_faces(g).size());
    return 2 - (g.vertex_count() - g.edge_count() + f);
}

bool is_orientable(const EmbeddedGraph& g) {
    // Orientable iff vertex switchings can make every sign +1, i.e. the signed
    // graph is balanced: 2-colour vertices by local orientation.
    const int n = g.vertex_count();
    std::vector<int> side(n, 0);
    for (int s = 0; s < n; ++s) {
        if (side[s]) continue;
        side[s] = 1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int d : g.rotation(x)) {
                int e = EmbeddedGraph::dart_edge(d);
                int y = g.head(d);
                int want = side[x] * g.edge_sign(e);
                if (!side[y]) {
                    side[y] = want;
                    stack.push_back(y);
                } else if (side[y] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Cycles and contractibility

void validate_cycle(const EmbeddedGraph& g, const CycleInEmbedding& c) {
    const int k = c.length();
    if (k == 0 || static_cast<int>(c.vertices.size()) != k)
        throw PreconditionError("cycle must list equally many (>0) vertices and edges");
    std::vector<char> seen_v(g.vertex_count(), 0);
    std::vector<char> seen_e(g.edge_count(), 0);
    for (int i = 0; i < k; ++i) {
        int v = c.vertices[i];
        int e = c.edges[i];
        if (v < 0 || v >= g.vertex_count() || e < 0 || e >= g.edge_count())
            throw PreconditionError("cycle references an index out of range");
        if (seen_v[v]) throw PreconditionError("cycle repeats a vertex");
        if (seen_e[e]) throw PreconditionError("cycle repeats an edge");
        seen_v[v] = 1;
        seen_e[e] = 1;
        int w = c.vertices[(i + 1) % k];
        bool ok = (g.edge_u(e) == v && g.edge_v(e) == w) || (g.edge_v(e) == v && g.edge_u(e) == w);
        if (!ok) throw PreconditionError("cycle edge does not join consecutive vertices");
    }
}

bool is_two_sided(const EmbeddedGraph& g, const CycleInEmbedding& c) {
    int product = 1;
    for (int e : c.edges) product *= g.edge_sign(e);
    return product == 1;
}

ContractibilityTester::ContractibilityTester(const EmbeddedGraph& g) : g_(&g) {
    auto faces = trace_faces(g);
    face_count_ = static_cast<int>(faces.size());
    edge_faces_.assign(g.edge_count(), {-1, -1});
    vertex_faces_.assign(g.vertex_count(), {});
    for (int f = 0; f < face_count_; ++f)
        for (const Corner& c : faces[f].corners) {
            auto& slot = edge_faces_[EmbeddedGraph::dart_edge(c.dart)];
            (slot.first < 0 ? slot.first : slot.second) = f;
            vertex_faces_[g.tail(c.dart)].push_back(f);
        }
}

bool ContractibilityTester::contractible(const CycleInEmbedding& c) const {
    validate_cycle(*g_, c);
    return contractible_unchecked(c.vertices, c.edges);
}

bool ContractibilityTester::contractible_unchecked(std::span<const int> cycle_vertices,
                                                   std::span<const int> cycle_edges) const {
    const EmbeddedGraph& g = *g_;
    int product = 1;
    for (int e : cycle_edges) product *= g.edge_sign(e);
    if (product != 1) return false;

    std::vector<char> on_cycle_edge(g.edge_count(), 0);
    for (int e : cycle_edges) on_cycle_edge[e] = 1;
    std::vector<char> on_cycle_vertex(g.vertex_count(), 0);
    for (int v : cycle_vertices) on_cycle_vertex[v] = 1;

    UnionFind uf(face_count_);
    int pieces = face_count_;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!on_cycle_edge[e] && uf.unite(edge_faces_[e].first, edge_faces_[e].second)) --pieces;
    if (pieces != 2) return false;

    // Euler characteristic of each piece, excluding the cycle itself (its
    // vertices and edges cancel).
    const int root0 = uf.find(edge_faces_[cycle_edges[0]].first);
    int chi[2] = {0, 0};
    for (int f = 0; f < face_count_; ++f) chi[uf.find(f) == root0 ? 0 : 1] += 1;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!on_cycle_edge[e]) chi[uf.find(edge_faces_[e].first) == root0 ? 0 : 1] -= 1;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!on_cycle_vertex[v] && !vertex_faces_[v].empty())
            chi[uf.find(vertex_faces_[v].front()) == root0 ? 0 : 1] += 1;
    return chi[0] == 1 || chi[1] == 1;
}

bool is_contractible(const EmbeddedGraph& g, const CycleInEmbedding& c) {
    return ContractibilityTester(g).contractible(c);
}

// ---------------------------------------------------------------------------
// Surgery

namespace {

struct Draft {
    std::vector<VertexId> vertices;
    std::vector<EdgeSpec> edges;
    RotationSpec rotation;

    static Draft from(const EmbeddedGraph& g) {
        return {g.vertex_ids(), g.edge_specs(), g.rotation_spec()};
    }
    EmbeddedGraph finish() const { return EmbeddedGraph::build(vertices, edges, rotation); }

    std::vector<DartSpec>::iterator find_dart(VertexId v, DartSpec d) {
        auto& r = rotation[v];
        return std::find(r.begin(), r.end(), d);
    }
};

DartSpec spec_of(const EmbeddedGraph& g, int d) {
    return {g.edge_id(EmbeddedGraph::dart_edge(d)), EmbeddedGraph::dart_end(d)};
}

} // namespace

EmbeddedGraph insert_edge_between_corners(const EmbeddedGraph& g, Corner a, Corner b, EdgeId new_id) {
    if (a == b) throw PreconditionError("cannot insert an edge between a corner and itself");
    if (g.find_edge_by_id(new_id)) throw PreconditionError("edge id already in use");
    Draft draft = Draft::from(g);
    const VertexId x = g.vertex_id(g.tail(a.dart));
    const VertexId y = g.vertex_id(g.tail(b.dart));
    draft.edges.push_back({new_id, x, y, a.orient * b.orient});
    auto place = [&](Corner c, VertexId at, int end) {
        auto it = draft.find_dart(at, spec_of(g, c.dart));
        if (c.orient < 0) ++it;
        draft.rotation[at].insert(it, DartSpec{new_id, end});
    };
    place(a, x, 0);
    place(b, y, 1);
    return draft.finish();
}

EmbeddedGraph remove_edge(const EmbeddedGraph& g, int e) {
    Draft draft = Draft::from(g);
    const EdgeId id = g.edge_id(e);
    draft.edges.erase(draft.edges.begin() + e);
    for (auto& [v, r] : draft.rotation)
        r.erase(std::remove_if(r.begin(), r.end(), [id](const DartSpec& d) { return d.edge == id; }), r.end());
    return draft.finish();
}

EmbeddedGraph remove_vertex(const EmbeddedGraph& g, int v) {
    Draft draft = Draft::from(g);
    const VertexId vid = g.vertex_id(v);
    std::vector<EdgeId> dropped;
    for (int d : g.rotation(v)) dropped.push_back(g.edge_id(EmbeddedGraph::dart_edge(d)));
    std::sort(dropped.begin(), dropped.end());
    auto is_dropped = [&](EdgeId id) { return std::binary_search(dropped.begin(), dropped.end(), id); };
    draft.vertices.erase(std::find(draft.vertices.begin(), draft.vertices.end(), vid));
    draft.edges.erase(std::remove_if(draft.edges.begin(), draft.edges.end(),
                                     [&](const EdgeSpec& e) { return is_dropped(e.id); }),
                      draft.edges.end());
    draft.rotation.erase(vid);
    for (auto& [w, r] : draft.rotation)
        r.erase(std::remove_if(r.begin(), r.end(), [&](const DartSpec& d) { return is_dropped(d.edge); }),
                r.end());
    return draft.finish();
}

SurgeryResult add_cofacial_edge(const EmbeddedGraph& g, const EdgeClassing& e1, VertexId u_id,
                                VertexId v_id, VertexId w_id) {
    const int u = g.vertex_index(u_id);
    const int v = g.vertex_index(v_id);
    const int w = g.vertex_index(w_id);
    if (u == w || u == v || w == v) throw PreconditionError("add_cofacial_edge needs three distinct vertices");
    if (g.adjacent(u, w))
        throw PreconditionError("edge " + std::to_string(u_id) + "-" + std::to_string(w_id) + " already exists");

    auto faces = trace_faces(g);
    bool saw_e1_pair = false;
    for (const Face& f : faces) {
        const int len = f.length();
        for (int i = 0; i < len; ++i) {
            const Corner c = f.corners[i];
            if (g.tail(c.dart) != v) continue;
            const int in = entry_dart(g, c);
            const int a = g.head(in);
            const int b = g.head(c.dart);
            if (!((a == u && b == w) || (a == w && b == u))) continue;
            const int ea = EmbeddedGraph::dart_edge(in);
            const int eb = EmbeddedGraph::dart_edge(c.dart);
            if (!e1.contains_index(g, ea) || !e1.contains_index(g, eb)) continue;
            saw_e1_pair = true;
            // The walk is ... -> a -> v -> b -> ...; join the corner leaving b
            // to the corner leaving a so that b -> a -> v -> b becomes a face.
            const Corner at_b = f.corners[(i + 1) % len];
            const Corner at_a = f.corners[(i + len - 1) % len];
            const EdgeId id = g.max_edge_id() + 1;
            EmbeddedGraph out = insert_edge_between_corners(g, at_b, at_a, id);
            return {std::move(out), e1, {id}};
        }
    }
    if (saw_e1_pair) throw PreconditionError("internal: cofacial corner found but not usable");
    // Distinguish the two failure modes for the caller.
    auto uv = g.find_edge(u, v);
    auto vw = g.find_edge(v, w);
    if (!uv || !vw) throw PreconditionError("uv and vw must both be edges");
    if (!e1.contains_index(g, *uv) || !e1.contains_index(g, *vw))
        throw PreconditionError("uv and vw must both be E1-edges");
    throw PreconditionError("uv and vw are not consecutive on a common face at v");
}

SurgeryResult replace_star(const EmbeddedGraph& g, const EdgeClassing& e1, VertexId v_id,
                           const std::vector<std::pair<VertexId, VertexId>>& chords) {
    const int v = g.vertex_index(v_id);
    const auto rot = g.rotation(v);
    const int k = static_cast<int>(rot.size());

    std::map<int, int> position; // neighbour index -> position in rotation at v
    std::vector<int> nbr(k), sgn(k);
    for (int i = 0; i < k; ++i) {
        const int d = rot[i];
        const int e = EmbeddedGraph::dart_edge(d);
        if (g.is_loop(e)) throw PreconditionError("replace_star: loop at the deleted vertex");
        nbr[i] = g.head(d);
        sgn[i] = g.edge_sign(e);
        if (!position.emplace(nbr[i], i).second)
            throw PreconditionError("replace_star: parallel edges at the deleted vertex");
    }

    struct Chord {
        int a, b; // positions
    };
    std::vector<Chord> cs;
    std::set<std::pair<int, int>> seen;
    for (const auto& [xa, xb] : chords) {
        auto ia = g.find_vertex(xa);
        auto ib = g.find_vertex(xb);
        if (!ia || !ib) throw PreconditionError("replace_star: chord endpoint is not a vertex");
        auto pa = position.find(*ia);
        auto pb = position.find(*ib);
        if (pa == position.end() || pb == position.end())
            throw PreconditionError("replace_star: chord endpoint is not a neighbour of v");
        if (*ia == *ib) throw PreconditionError("replace_star: chord is a loop");
        for (int p : {pa->second, pb->second}) {
            const int e = EmbeddedGraph::dart_edge(rot[p]);
            if (!e1.contains_index(g, e))
                throw PreconditionError("replace_star: chord endpoint is not an E1-neighbour of v");
        }
        if (g.adjacent(*ia, *ib))
            throw PreconditionError("replace_star: chord " + std::to_string(xa) + "-" + std::to_string(xb) +
                                    " is already an edge");
        auto key = std::minmax(pa->second, pb->second);
        if (!seen.insert(key).second) throw PreconditionError("replace_star: duplicate chord");
        cs.push_back({pa->second, pb->second});
    }
    auto between = [k](int from, int x, int to) {
        // strictly inside the open arc from -> to (increasing positions mod k)
        int dx = (x - from + k) % k, dt = (to - from + k) % k;
        return dx > 0 && dx < dt;
    };
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const auto& p = cs[i];
            const auto& q = cs[j];
            if (p.a == q.a || p.a == q.b || p.b == q.a || p.b == q.b) continue;
            if (between(p.a, q.a, p.b) != between(p.a, q.b, p.b))
                throw PreconditionError("replace_star: chords cross");
        }

    // Removing v leaves a gap at each neighbour where its dart to v sat.
    // Chords leaving position i are placed in that gap ordered by their
    // offset around v, reversed when the neighbour's local orientation is
    // opposite to v's.
    Draft draft = Draft::from(remove_vertex(g, v));
    EdgeId next_id = g.max_edge_id() + 1;
    std::vector<std::vector<std::pair<int, DartSpec>>> at_pos(k); // (offset, dart)
    std::vector<EdgeId> added;
    for (const Chord& c : cs) {
        const EdgeId id = next_id++;
        added.push_back(id);
        draft.edges.push_back({id, g.vertex_id(nbr[c.a]), g.vertex_id(nbr[c.b]), sgn[c.a] * sgn[c.b]});
        at_pos[c.a].push_back({(c.b - c.a + k) % k, DartSpec{id, 0}});
        at_pos[c.b].push_back({(c.a - c.b + k) % k, DartSpec{id, 1}});
    }
    // Positions of the gaps, taken from the original rotations.
    for (int i = 0; i < k; ++i) {
        if (at_pos[i].empty()) continue;
        auto& list = at_pos[i];
        std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        if (sgn[i] < 0) std::reverse(list.begin(), list.end());
        const int n = nbr[i];
        const VertexId nid = g.vertex_id(n);
        // Locate the surviving dart that followed the dart to v at n.
        const int back = EmbeddedGraph::reverse(rot[i]);
        const auto nrot = g.rotation(n);
        const int deg = static_cast<int>(nrot.size());
        const int pos = g.rotation_position(back);
        auto& r = draft.rotation[nid];
        std::size_t insert_at = r.size();
        for (int step = 1; step < deg; ++step) {
            const int d = nrot[(pos + step) % deg];
            if (g.head(d) == v) continue;
            auto it = std::find(r.begin(), r.end(), spec_of(g, d));
            insert_at = static_cast<std::size_t>(it - r.begin());
            break;
        }
        std::vector<DartSpec> block;
        for (const auto& [off, ds] : list) block.push_back(ds);
        r.insert(r.begin() + static_cast<std::ptrdiff_t>(insert_at), block.begin(), block.end());
    }

    std::vector<EdgeId> star;
    for (int d : rot) star.push_back(g.edge_id(EmbeddedGraph::dart_edge(d)));
    EmbeddedGraph out = draft.finish();
    EdgeClassing child_e1 = e1.without(star).restricted_to(out);
    return {std::move(out), std::move(child_e1), std::move(added)};
}

} // namespace surfcol
