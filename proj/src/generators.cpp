#include "surfcol/generators.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace surfcol {

Rng::Rng(std::uint64_t seed) : state_(seed) {}

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int Rng::below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

/// All-positive embedding of a simple graph given each vertex's neighbours in
/// rotation order.  Edge ids follow the sorted (min, max) endpoint pairs.
EmbeddedGraph from_neighbour_rotation(const std::vector<std::vector<int>>& rot) {
    const int n = static_cast<int>(rot.size());
    std::map<std::pair<int, int>, EdgeId> ids;
    for (int x = 0; x < n; ++x)
        for (int y : rot[x]) ids.emplace(std::minmax(x, y), 0);
    std::vector<EdgeSpec> edges;
    EdgeId next = 0;
    for (auto& [key, id] : ids) {
        id = next++;
        edges.push_back({id, key.first, key.second, 1});
    }
    RotationSpec rotation;
    std::vector<VertexId> vertices(n);
    for (int x = 0; x < n; ++x) {
        vertices[x] = x;
        auto& list = rotation[x];
        for (int y : rot[x]) list.push_back({ids.at(std::minmax(x, y)), x < y ? 0 : 1});
    }
    return EmbeddedGraph::build(std::move(vertices), std::move(edges), rotation);
}

void check_grid(int m, int n) {
    if (m < 3 || n < 3) throw PreconditionError("grid dimensions must be at least 3");
}

} // namespace

EmbeddedGraph from_oriented_faces(int n, const std::vector<std::vector<int>>& faces) {
    // At p_i the walk enters from p_{i-1} and leaves to p_{i+1}, so p_{i+1}
    // is the rotation successor of p_{i-1} at p_i.
    std::vector<std::map<int, int>> next_at(n);
    for (const auto& f : faces) {
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            const int prev = f[(i + k - 1) % k], here = f[i], nxt = f[(i + 1) % k];
            if (!next_at[here].emplace(prev, nxt).second)
                throw InvalidInput("inconsistent face orientation at vertex " + std::to_string(here));
        }
    }
    std::vector<std::vector<int>> rot(n);
    for (int x = 0; x < n; ++x) {
        if (next_at[x].empty()) continue;
        const int start = next_at[x].begin()->first;
        int y = start;
        do {
            rot[x].push_back(y);
            auto it = next_at[x].find(y);
            if (it == next_at[x].end()) throw InvalidInput("faces do not close up around vertex " + std::to_string(x));
            y = it->second;
        } while (y != start && rot[x].size() <= next_at[x].size());
        if (rot[x].size() != next_at[x].size())
            throw InvalidInput("faces around vertex " + std::to_string(x) + " do not form a single disk");
    }
    return from_neighbour_rotation(rot);
}

EmbeddedGraph torus_grid_quad(int m, int n) {
    check_grid(m, n);
    auto id = [&](int i, int j) { return ((i % m + m) % m) * n + (j % n + n) % n; };
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)});
    return from_oriented_faces(m * n, faces);
}

EmbeddedGraph torus_grid_tri(int m, int n) {
    check_grid(m, n);
    auto id = [&](int i, int j) { return ((i % m + m) % m) * n + (j % n + n) % n; };
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
            faces.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
        }
    return from_oriented_faces(m * n, faces);
}

EmbeddedGraph klein_grid(int m, int n) {
    check_grid(m, n);
    // Local rotation at every vertex: right, up, left, down.  The wrap from
    // row m-1 to row 0 reflects the column index and carries sign -1.
    auto id = [&](int i, int j) { return i * n + j; };
    std::vector<EdgeSpec> edges;
    std::map<std::pair<int, int>, EdgeId> right, up; // keyed by the lower/left vertex (i,j)
    EdgeId next = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            right[{i, j}] = next;
            edges.push_back({next++, id(i, j), id(i, (j + 1) % n), 1});
            up[{i, j}] = next;
            if (i + 1 < m)
                edges.push_back({next++, id(i, j), id(i + 1, j), 1});
            else
                edges.push_back({next++, id(i, j), id(0, n - 1 - j), -1});
        }
    RotationSpec rotation;
    std::vector<VertexId> vertices;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            vertices.push_back(id(i, j));
            std::vector<DartSpec> r;
            r.push_back({right.at({i, j}), 0});
            r.push_back({up.at({i, j}), 0});
            r.push_back({right.at({i, (j + n - 1) % n}), 1});
            if (i > 0)
                r.push_back({up.at({i - 1, j}), 1});
            else
                r.push_back({up.at({m - 1, n - 1 - j}), 1});
            rotation[id(i, j)] = std::move(r);
        }
    return EmbeddedGraph::build(std::move(vertices), std::move(edges), rotation);
}

EmbeddedGraph projective_wheel(int n) {
    if (n < 3) throw PreconditionError("projective_wheel needs at least 3 rim vertices");
    std::vector<std::vector<int>> faces;
    std::vector<int> outer;
    for (int i = 1; i <= n; ++i) {
        faces.push_back({0, i, i % n + 1});
        outer.push_back(n + 1 - i);
    }
    faces.push_back(outer);
    EmbeddedGraph planar = from_oriented_faces(n + 1, faces);
    // Flip the rim edge n-1 into a crosscap.
    auto edges = planar.edge_specs();
    for (auto& e : edges)
        if ((e.u == 1 && e.v == n) || (e.u == n && e.v == 1)) e.sign = -1;
    return EmbeddedGraph::build(planar.vertex_ids(), std::move(edges), planar.rotation_spec());
}

EmbeddedGraph random_planar_triangulation(int n, std::uint64_t seed) {
    if (n < 3) throw PreconditionError("a triangulation needs at least 3 vertices");
    Rng rng(seed);
    std::vector<std::vector<int>> rot{{1, 2}, {2, 0}, {0, 1}};
    auto insert_between = [](std::vector<int>& r, int before, int x) {
        auto it = std::find(r.begin(), r.end(), before);
        r.insert(it + 1, x);
    };
    auto follows = [](const std::vector<int>& r, int a) {
        auto it = std::find(r.begin(), r.end(), a);
        return ++it == r.end() ? r.front() : *it;
    };
    // Stack new vertices into random faces.
    while (static_cast<int>(rot.size()) < n) {
        const int b = rng.below(static_cast<int>(rot.size()));
        const int a = rot[b][rng.below(static_cast<int>(rot[b].size()))];
        const int c = follows(rot[b], a); // face walk a -> b -> c
        const int y = static_cast<int>(rot.size());
        insert_between(rot[b], a, y);
        insert_between(rot[c], b, y);
        insert_between(rot[a], c, y);
        rot.push_back({a, c, b});
    }
    // Random flips diversify the degree sequence.
    const int flips = 4 * n;
    for (int t = 0; t < flips; ++t) {
        const int a = rng.below(n);
        const int b = rot[a][rng.below(static_cast<int>(rot[a].size()))];
        const int c = follows(rot[b], a); // face a -> b -> c
        const int d = follows(rot[a], b); // face b -> a -> d
        if (c == d || rot[a].size() <= 3 || rot[b].size() <= 3) continue;
        if (std::find(rot[c].begin(), rot[c].end(), d) != rot[c].end()) continue;
        rot[a].erase(std::find(rot[a].begin(), rot[a].end(), b));
        rot[b].erase(std::find(rot[b].begin(), rot[b].end(), a));
        insert_between(rot[c], b, d);
        insert_between(rot[d], a, c);
    }
    return from_neighbour_rotation(rot);
}

EmbeddedGraph icosahedron() {
    // top 0, upper ring 1..5, lower ring 6..10, bottom 11
    auto U = [](int i) { return 1 + (i % 5); };
    auto L = [](int i) { return 6 + (i % 5); };
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 5; ++i) {
        faces.push_back({0, U(i), U(i + 1)});
        faces.push_back({U(i), L(i), U(i + 1)});
        faces.push_back({U(i + 1), L(i), L(i + 1)});
        faces.push_back({L(i), 11, L(i + 1)});
    }
    return from_oriented_faces(12, faces);
}

EmbeddedGraph k7_torus() {
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 7; ++i) {
        faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
        faces.push_back({i, (i + 3) % 7, (i + 2) % 7});
    }
    return from_oriented_faces(7, faces);
}

EmbeddedGraph random_embedded_graph(int n, int m, std::uint64_t seed, double negative_prob) {
    if (n < 1) throw PreconditionError("random_embedded_graph needs at least one vertex");
    const long max_edges = static_cast<long>(n) * (n - 1) / 2;
    if (m < n - 1 || m > max_edges) throw PreconditionError("edge count out of range for a connected simple graph");
    Rng rng(seed);
    std::set<std::pair<int, int>> edge_set;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (int i = 1; i < n; ++i) edge_set.insert(std::minmax(order[i], order[rng.below(i)]));
    while (static_cast<int>(edge_set.size()) < m) {
        int a = rng.below(n), b = rng.below(n);
        if (a != b) edge_set.insert(std::minmax(a, b));
    }
    std::vector<EdgeSpec> edges;
    std::vector<std::vector<DartSpec>> at(n);
    EdgeId id = 0;
    for (auto [a, b] : edge_set) {
        int sign = negative_prob > 0.0 && rng.unit() < negative_prob ? -1 : 1;
        edges.push_back({id, a, b, sign});
        at[a].push_back({id, 0});
        at[b].push_back({id, 1});
        ++id;
    }
    RotationSpec rotation;
    std::vector<VertexId> vertices(n);
    for (int v = 0; v < n; ++v) {
        vertices[v] = v;
        rng.shuffle(at[v]);
        rotation[v] = at[v];
    }
    return EmbeddedGraph::build(std::move(vertices), std::move(edges), rotation);
}

Family parse_family(const std::string& name) {
    static const std::map<std::string, Family> names{
        {"torus_grid_quad", Family::torus_grid_quad},
        {"torus_grid_tri", Family::torus_grid_tri},
        {"klein_grid", Family::klein_grid},
        {"projective_wheel", Family::projective_wheel},
        {"random_planar_triangulation", Family::random_planar_triangulation},
        {"icosahedron", Family::icosahedron},
        {"k7_torus", Family::k7_torus},
    };
    auto it = names.find(name);
    if (it == names.end()) throw InvalidInput("unknown generator family '" + name + "'");
    return it->second;
}

std::string family_name(Family f) {
    switch (f) {
    case Family::torus_grid_quad: return "torus_grid_quad";
    case Family::torus_grid_tri: return "torus_grid_tri";
    case Family::klein_grid: return "klein_grid";
    case Family::projective_wheel: return "projective_wheel";
    case Family::random_planar_triangulation: return "random_planar_triangulation";
    case Family::icosahedron: return "icosahedron";
    case Family::k7_torus: return "k7_torus";
    }
    return "?";
}

EdgeClassing random_e1(const EmbeddedGraph& g, double probability, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<EdgeId> ids;
    for (int e = 0; e < g.edge_count(); ++e)
        if (rng.unit() < probability) ids.push_back(g.edge_id(e));
    return EdgeClassing(std::move(ids));
}

ListAssignment palette_lists(const EmbeddedGraph& g, int palette, int k, std::uint64_t seed) {
    if (k < 1 || palette < k) throw PreconditionError("palette must hold at least k colours");
    Rng rng(seed);
    ListAssignment lists;
    std::vector<Colour> all(palette);
    for (int c = 0; c < palette; ++c) all[c] = c + 1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        // partial Fisher-Yates: first k entries become a uniform k-subset
        for (int i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(palette - i)]);
        std::vector<Colour> list(all.begin(), all.begin() + k);
        std::sort(list.begin(), list.end());
        lists[g.vertex_id(v)] = std::move(list);
    }
    return lists;
}

Instance generate(const GeneratorSpec& spec) {
    EmbeddedGraph g;
    switch (spec.family) {
    case Family::torus_grid_quad: g = torus_grid_quad(spec.m, spec.n); break;
    case Family::torus_grid_tri: g = torus_grid_tri(spec.m, spec.n); break;
    case Family::klein_grid: g = klein_grid(spec.m, spec.n); break;
    case Family::projective_wheel: g = projective_wheel(spec.n); break;
    case Family::random_planar_triangulation: g = random_planar_triangulation(spec.n, spec.seed); break;
    case Family::icosahedron: g = icosahedron(); break;
    case Family::k7_torus: g = k7_torus(); break;
    }
    EdgeClassing e1;
    switch (spec.e1) {
    case E1Policy::all: e1 = EdgeClassing::all_edges(g); break;
    case E1Policy::none: break;
    case E1Policy::random: e1 = random_e1(g, spec.e1_probability, spec.e1_seed); break;
    }
    ListAssignment lists = palette_lists(g, spec.palette, spec.k, spec.list_seed);
    return {std::move(g), std::move(e1), std::move(lists)};
}

} // namespace surfcol
