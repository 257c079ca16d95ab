#include "surfcol/edge_width.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace surfcol {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

void check_inputs(const EmbeddedGraph& g, int t) {
    if (t < 1) throw PreconditionError("t must be a positive integer");
    if (!g.is_connected()) throw PreconditionError("edge-width requires a connected embedded graph");
}

std::vector<int> edge_weights(const EmbeddedGraph& g, const EdgeClassing& e1, int t) {
    std::vector<int> w(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) w[e] = e1.contains_index(g, e) ? 1 : t;
    return w;
}

/// Dijkstra from `root` over vertices with index >= `floor`.
std::vector<int> distances(const EmbeddedGraph& g, const std::vector<int>& w, int root, int floor) {
    std::vector<int> dist(g.vertex_count(), kInf);
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[root] = 0;
    pq.push({0, root});
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d != dist[x]) continue;
        for (int dart : g.rotation(x)) {
            int y = g.head(dart);
            if (y < floor) continue;
            int nd = d + w[EmbeddedGraph::dart_edge(dart)];
            if (nd < dist[y]) {
                dist[y] = nd;
                pq.push({nd, y});
            }
        }
    }
    return dist;
}

} // namespace

std::string to_string(WidthStatus s) {
    switch (s) {
    case WidthStatus::finite: return "finite";
    case WidthStatus::sphere: return "sphere";
    case WidthStatus::bounded_infinite: return "bounded-infinite";
    }
    return "?";
}

int cycle_weight(const EmbeddedGraph& g, const EdgeClassing& e1, const CycleInEmbedding& c, int t) {
    int total = 0;
    for (int e : c.edges) total += e1.contains_index(g, e) ? 1 : t;
    return total;
}

WeightedWidthResult weighted_edge_width_oracle(const EmbeddedGraph& g, const EdgeClassing& e1, int t,
                                               std::optional<int> budget) {
    check_inputs(g, t);
    WeightedWidthResult result;
    if (euler_genus(g) == 0) return result;

    const auto w = edge_weights(g, e1, t);
    const ContractibilityTester tester(g);
    const int n = g.vertex_count();
    // Searching for weight < best.
    int best = budget ? *budget + 1 : kInf;
    std::optional<CycleInEmbedding> witness;

    std::vector<int> path_v, path_e;
    std::vector<char> on_path(n, 0), used(g.edge_count(), 0);
    std::vector<int> dist_back;

    // Depth-first extension of the path starting at s; every cycle is
    // enumerated with s as its smallest vertex.
    auto dfs = [&](auto&& self, int s, int x, int weight) -> void {
        for (int dart : g.rotation(x)) {
            const int e = EmbeddedGraph::dart_edge(dart);
            if (used[e]) continue;
            const int y = g.head(dart);
            const int nw = weight + w[e];
            if (y == s) {
                if (nw < best) {
                    path_e.push_back(e);
                    if (!tester.contractible_unchecked(path_v, path_e)) {
                        best = nw;
                        witness = CycleInEmbedding{path_v, path_e};
                    }
                    path_e.pop_back();
                }
                continue;
            }
            if (y < s || on_path[y]) continue;
            if (dist_back[y] >= kInf || nw + dist_back[y] >= best) continue;
            on_path[y] = 1;
            used[e] = 1;
            path_v.push_back(y);
            path_e.push_back(e);
            self(self, s, y, nw);
            path_v.pop_back();
            path_e.pop_back();
            used[e] = 0;
            on_path[y] = 0;
        }
    };

    for (int s = 0; s < n; ++s) {
        dist_back = distances(g, w, s, s);
        path_v = {s};
        path_e.clear();
        on_path[s] = 1;
        dfs(dfs, s, s, 0);
        on_path[s] = 0;
    }

    if (witness) {
        result.status = WidthStatus::finite;
        result.width = best;
        result.witness = std::move(witness);
    } else {
        result.status = WidthStatus::bounded_infinite;
    }
    return result;
}

WeightedWidthResult weighted_edge_width_fast(const EmbeddedGraph& g, const EdgeClassing& e1, int t) {
    check_inputs(g, t);
    WeightedWidthResult result;
    if (euler_genus(g) == 0) return result;

    const auto w = edge_weights(g, e1, t);
    const ContractibilityTester tester(g);
    const int n = g.vertex_count();
    int best = kInf;
    std::optional<CycleInEmbedding> witness;

    std::vector<int> dist(n), parent_edge(n), depth(n);
    for (int r = 0; r < n; ++r) {
        // Shortest-path tree; ties broken by vertex index then rotation order.
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(parent_edge.begin(), parent_edge.end(), -1);
        using Item = std::pair<int, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[r] = 0;
        depth[r] = 0;
        pq.push({0, r});
        while (!pq.empty()) {
            auto [d, x] = pq.top();
            pq.pop();
            if (d != dist[x]) continue;
            for (int dart : g.rotation(x)) {
                const int y = g.head(dart);
                const int e = EmbeddedGraph::dart_edge(dart);
                const int nd = d + w[e];
                if (nd < dist[y]) {
                    dist[y] = nd;
                    parent_edge[y] = e;
                    depth[y] = depth[x] + 1;
                    pq.push({nd, y});
                }
            }
        }
        for (int e = 0; e < g.edge_count(); ++e) {
            const int x = g.edge_u(e), y = g.edge_v(e);
            if (parent_edge[x] == e || parent_edge[y] == e) continue;
            // Walk both tree paths up to their lowest common ancestor.
            std::vector<int> left_v{x}, left_e, right_v{y}, right_e;
            int a = x, b = y;
            while (a != b) {
                if (depth[a] >= depth[b]) {
                    const int pe = parent_edge[a];
                    left_e.push_back(pe);
                    a = g.other_end(pe, a);
                    left_v.push_back(a);
                } else {
                    const int pe = parent_edge[b];
                    right_e.push_back(pe);
                    b = g.other_end(pe, b);
                    right_v.push_back(b);
                }
            }
            const int lca = a;
            const int weight = dist[x] + dist[y] - 2 * dist[lca] + w[e];
            if (weight >= best) continue;
            // Cycle: lca -> ... -> x -e-> y -> ... -> lca
            CycleInEmbedding c;
            for (int i = static_cast<int>(left_v.size()) - 1; i >= 0; --i) c.vertices.push_back(left_v[i]);
            for (int i = static_cast<int>(left_e.size()) - 1; i >= 0; --i) c.edges.push_back(left_e[i]);
            c.edges.push_back(e);
            for (std::size_t i = 0; i + 1 < right_v.size(); ++i) c.vertices.push_back(right_v[i]);
            for (int pe : right_e) c.edges.push_back(pe);
            if (x == y) { // loop
                c.vertices = {x};
                c.edges = {e};
            }
            if (!tester.contractible_unchecked(c.vertices, c.edges)) {
                best = weight;
                witness = std::move(c);
            }
        }
    }
    if (witness) {
        result.status = WidthStatus::finite;
        result.width = best;
        result.witness = std::move(witness);
    } else {
        result.status = WidthStatus::bounded_infinite;
    }
    return result;
}

} // namespace surfcol
