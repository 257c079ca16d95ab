#pragma once
// Shared fixtures and test-only oracles.  Nothing here calls into the
// algorithm under test when it is used as an oracle for that algorithm.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "surfcol/colouring.hpp"
#include "surfcol/embedding.hpp"
#include "surfcol/generators.hpp"

namespace surfcol::testing {

/// Builds a graph from edges {u, v, sign} (ids 0..) and a rotation given as
/// (edge index, end) pairs per vertex.
inline EmbeddedGraph make_graph(int n, const std::vector<std::tuple<int, int, int>>& edges,
                                const std::vector<std::vector<std::pair<int, int>>>& rotation) {
    std::vector<VertexId> vs(n);
    for (int i = 0; i < n; ++i) vs[i] = i;
    std::vector<EdgeSpec> es;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        auto [u, v, s] = edges[i];
        es.push_back({i, u, v, s});
    }
    RotationSpec rot;
    for (int v = 0; v < n; ++v)
        for (auto [e, end] : rotation[v]) rot[v].push_back({e, end});
    return EmbeddedGraph::build(vs, es, rot);
}

inline EmbeddedGraph triangle() {
    return from_oriented_faces(3, {{0, 1, 2}, {0, 2, 1}});
}

inline EmbeddedGraph cycle_graph(int n) {
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i) {
        a.push_back(i);
        b.push_back(n - 1 - i);
    }
    return from_oriented_faces(n, {a, b});
}

/// Planar wheel: hub 0, rim 1..n in rotation order.
inline EmbeddedGraph planar_wheel(int n) {
    std::vector<std::vector<int>> faces;
    std::vector<int> outer;
    for (int i = 1; i <= n; ++i) {
        faces.push_back({0, i, i % n + 1});
        outer.push_back(n + 1 - i);
    }
    faces.push_back(outer);
    return from_oriented_faces(n + 1, faces);
}

/// Every simple cycle of `g` (as vertex/edge index lists), each reported once
/// per direction and starting vertex choice is canonicalised away: the cycle
/// starts at its smallest vertex and, for length >= 3, the second vertex is
/// smaller than the last.  Loops and 2-cycles over parallel edges included.
inline std::vector<CycleInEmbedding> all_simple_cycles(const EmbeddedGraph& g) {
    std::vector<CycleInEmbedding> out;
    const int n = g.vertex_count();
    std::vector<int> path_v, path_e;
    std::vector<char> on(n, 0), used(g.edge_count(), 0);
    std::set<std::vector<int>> seen_edge_sets;
    std::function<void(int, int)> dfs = [&](int s, int x) {
        for (int d : g.rotation(x)) {
            int e = EmbeddedGraph::dart_edge(d);
            if (used[e]) continue;
            int y = g.head(d);
            if (y == s) {
                CycleInEmbedding c{path_v, path_e};
                c.edges.push_back(e);
                std::vector<int> key = c.edges;
                std::sort(key.begin(), key.end());
                if (seen_edge_sets.insert(key).second) out.push_back(c);
                continue;
            }
            if (y < s || on[y]) continue;
            on[y] = 1;
            used[e] = 1;
            path_v.push_back(y);
            path_e.push_back(e);
            dfs(s, y);
            path_v.pop_back();
            path_e.pop_back();
            used[e] = 0;
            on[y] = 0;
        }
    };
    for (int s = 0; s < n; ++s) {
        path_v = {s};
        path_e.clear();
        on.assign(n, 0);
        on[s] = 1;
        dfs(s, s);
    }
    return out;
}

inline int cycle_weight(const EmbeddedGraph& g, const EdgeClassing& e1, const CycleInEmbedding& c, int t) {
    int w = 0;
    for (int e : c.edges) w += e1.contains_index(g, e) ? 1 : t;
    return w;
}

} // namespace surfcol::testing

#include "surfcol/reducer.hpp"

namespace surfcol::testing {

/// K_n with a uniformly random rotation at every vertex.
inline EmbeddedGraph random_complete(int n, std::uint64_t seed, double negative_prob = 0.0) {
    return random_embedded_graph(n, n * (n - 1) / 2, seed, negative_prob);
}

/// Adds SATURATION edges until none applies; returns the configuration found
/// afterwards (E1 = all edges throughout).
inline Configuration saturate(EmbeddedGraph& g) {
    for (;;) {
        auto e1 = EdgeClassing::all_edges(g);
        auto cfg = detect_configuration(g, e1);
        if (cfg.kind != ConfigKind::SATURATION) return cfg;
        g = reduce_once(g, e1, cfg).child;
    }
}

/// Orientable K_n with random rotations; then every face of length 4..`max_len`
/// with distinct vertices gets a new vertex joined to all of its corners.
/// New vertices have degree 4..max_len and only high-degree neighbours.
inline EmbeddedGraph stuffed_complete(int n, std::uint64_t seed, int max_len = 6) {
    auto base = random_complete(n, seed);
    std::vector<std::vector<int>> faces;
    int next = n;
    for (const Face& f : trace_faces(base)) {
        std::vector<int> walk;
        for (const Corner& c : f.corners) walk.push_back(base.tail(c.dart));
        std::set<int> distinct(walk.begin(), walk.end());
        const int len = static_cast<int>(walk.size());
        if (len < 4 || len > max_len || static_cast<int>(distinct.size()) != len) {
            faces.push_back(walk);
            continue;
        }
        const int x = next++;
        for (int i = 0; i < len; ++i) faces.push_back({walk[i], walk[(i + 1) % len], x});
    }
    return from_oriented_faces(next, faces);
}

/// Embedded graphs on which detect_configuration (E1 = all) returns NONE:
/// complete graphs on >= 8 vertices, and saturated dense random graphs that
/// pass the filter.
inline std::vector<EmbeddedGraph> configuration_free_corpus(int count, std::uint64_t seed) {
    std::vector<EmbeddedGraph> out;
    for (std::uint64_t s = seed; static_cast<int>(out.size()) < count; ++s) {
        Rng rng(s);
        EmbeddedGraph g;
        if (s % 3 == 0) {
            g = random_complete(8 + rng.below(4), s, s % 2 == 0 ? 0.3 : 0.0);
        } else if (s % 3 == 1) {
            g = stuffed_complete(10 + rng.below(3), s, 4 + rng.below(4));
        } else {
            const int n = 10 + rng.below(6);
            const int m = n * (n - 1) / 2 - rng.below(n);
            g = random_embedded_graph(n, m, s, 0.0);
        }
        if (saturate(g).kind == ConfigKind::NONE) out.push_back(std::move(g));
    }
    return out;
}

} // namespace surfcol::testing
