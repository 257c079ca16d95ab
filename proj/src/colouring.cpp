#include "surfcol/colouring.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace surfcol {

ListAssignment normalize_lists(const EmbeddedGraph& g, const ListAssignment& lists, int k) {
    ListAssignment out;
    for (int i = 0; i < g.vertex_count(); ++i) {
        const VertexId v = g.vertex_id(i);
        auto it = lists.find(v);
        if (it == lists.end()) throw PreconditionError("no list for vertex " + std::to_string(v));
        std::vector<Colour> l = it->second;
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        if (static_cast<int>(l.size()) < k)
            throw PreconditionError("list of vertex " + std::to_string(v) + " has fewer than " +
                                    std::to_string(k) + " colours");
        l.resize(k);
        out[v] = std::move(l);
    }
    return out;
}

std::vector<Colour> dense_colouring(const EmbeddedGraph& g, const Colouring& phi) {
    std::vector<Colour> out(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) {
        auto it = phi.find(g.vertex_id(i));
        if (it == phi.end()) throw PreconditionError("colouring misses vertex " + std::to_string(g.vertex_id(i)));
        out[i] = it->second;
    }
    return out;
}

Colouring sparse_colouring(const EmbeddedGraph& g, const std::vector<Colour>& dense) {
    Colouring out;
    for (int i = 0; i < g.vertex_count(); ++i) out[g.vertex_id(i)] = dense[i];
    return out;
}

bool is_proper(const EmbeddedGraph& g, const Colouring& phi) {
    const auto c = dense_colouring(g, phi);
    for (int e = 0; e < g.edge_count(); ++e)
        if (c[g.edge_u(e)] == c[g.edge_v(e)]) return false;
    return true;
}

bool respects_lists(const Colouring& phi, const ListAssignment& lists) {
    for (const auto& [v, c] : phi) {
        auto it = lists.find(v);
        if (it == lists.end()) return false;
        if (std::find(it->second.begin(), it->second.end(), c) == it->second.end()) return false;
    }
    return true;
}

AcyclicityVerdict is_e1_acyclic(const EmbeddedGraph& g, const EdgeClassing& e1, const Colouring& phi) {
    if (!is_proper(g, phi)) throw PreconditionError("colouring is not proper");
    const auto c = dense_colouring(g, phi);
    const int n = g.vertex_count();

    // Group E1-edges by their (unordered) colour pair; each group must be a forest.
    std::map<std::pair<Colour, Colour>, std::vector<int>> groups;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!e1.contains_index(g, e)) continue;
        Colour a = c[g.edge_u(e)], b = c[g.edge_v(e)];
        groups[{std::min(a, b), std::max(a, b)}].push_back(e);
    }

    std::vector<int> parent(n);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::vector<std::pair<int, int>>> forest(n); // (neighbour, edge)
    for (const auto& [pair, edges] : groups) {
        std::vector<int> touched;
        for (int e : edges) touched.push_back(g.edge_u(e)), touched.push_back(g.edge_v(e));
        for (int x : touched) parent[x] = x, forest[x].clear();
        for (int e : edges) {
            const int u = g.edge_u(e), v = g.edge_v(e);
            const int ru = find(u), rv = find(v);
            if (ru != rv) {
                parent[ru] = rv;
                forest[u].push_back({v, e});
                forest[v].push_back({u, e});
                continue;
            }
            // Closing edge: the forest path v -> u plus e is the bicoloured cycle.
            std::map<int, std::pair<int, int>> prev; // vertex -> (previous vertex, edge)
            std::queue<int> q;
            q.push(v);
            prev[v] = {-1, -1};
            while (!q.empty() && !prev.count(u)) {
                int x = q.front();
                q.pop();
                for (auto [y, fe] : forest[x])
                    if (!prev.count(y)) prev[y] = {x, fe}, q.push(y);
            }
            CycleInEmbedding cyc;
            for (int x = u; x != -1; x = prev[x].first) {
                cyc.vertices.push_back(x);
                if (prev[x].second >= 0) cyc.edges.push_back(prev[x].second);
            }
            cyc.edges.push_back(e); // from v back to u
            return {false, std::move(cyc)};
        }
    }
    return {};
}

namespace detail {

E1Adjacency::E1Adjacency(const EmbeddedGraph& g, const EdgeClassing& e1) : nbrs(g.vertex_count()) {
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!e1.contains_index(g, e) || g.is_loop(e)) continue;
        nbrs[g.edge_u(e)].push_back(g.edge_v(e));
        nbrs[g.edge_v(e)].push_back(g.edge_u(e));
    }
}

bool closes_bicoloured_cycle(const E1Adjacency& adj, const std::vector<Colour>& phi, int x) {
    const Colour cx = phi[x];
    if (cx < 0) return false;
    const auto& around = adj.nbrs[x];
    // Colours appearing at least twice among E1-neighbours of x.
    std::map<Colour, int> count;
    for (int y : around)
        if (phi[y] >= 0) ++count[phi[y]];
    std::vector<int> mark(phi.size(), -1);
    for (const auto& [b, k] : count) {
        if (k < 2) continue;
        // Components of the {b, cx} E1-subgraph without x; a cycle through x
        // exists iff two b-coloured neighbours of x share a component.
        int comp = 0;
        std::fill(mark.begin(), mark.end(), -1);
        for (int start : around) {
            if (phi[start] != b) continue;
            if (mark[start] >= 0) return true;
            std::vector<int> stack{start};
            mark[start] = comp;
            while (!stack.empty()) {
                int y = stack.back();
                stack.pop_back();
                for (int z : adj.nbrs[y]) {
                    if (z == x || mark[z] >= 0) continue;
                    if (phi[z] != b && phi[z] != cx) continue;
                    mark[z] = comp;
                    stack.push_back(z);
                }
            }
            ++comp;
        }
    }
    return false;
}

bool clashes(const EmbeddedGraph& g, const std::vector<Colour>& phi, int x, Colour c) {
    for (int d : g.rotation(x))
        if (phi[g.head(d)] == c) return true;
    return false;
}

} // namespace detail

std::optional<Colouring> exact_solve(const EmbeddedGraph& g, const EdgeClassing& e1, const ListAssignment& lists) {
    if (!g.is_simple()) throw PreconditionError("exact_solve requires a simple graph");
    const int n = g.vertex_count();
    std::vector<std::vector<Colour>> l(n);
    for (int i = 0; i < n; ++i) {
        auto it = lists.find(g.vertex_id(i));
        if (it == lists.end()) throw PreconditionError("no list for vertex " + std::to_string(g.vertex_id(i)));
        std::set<Colour> s(it->second.begin(), it->second.end());
        l[i].assign(s.begin(), s.end());
    }

    // Degeneracy elimination: repeatedly remove a minimum-degree vertex
    // (lowest id first); colour in reverse elimination order.
    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = g.degree(i);
    std::set<std::tuple<int, VertexId, int>> pool;
    for (int i = 0; i < n; ++i) pool.insert({deg[i], g.vertex_id(i), i});
    std::vector<char> removed(n, 0);
    std::vector<int> order;
    while (!pool.empty()) {
        auto [d, id, x] = *pool.begin();
        pool.erase(pool.begin());
        removed[x] = 1;
        order.push_back(x);
        for (int y : g.neighbours(x)) {
            if (removed[y]) continue;
            pool.erase({deg[y], g.vertex_id(y), y});
            --deg[y];
            pool.insert({deg[y], g.vertex_id(y), y});
        }
    }
    std::reverse(order.begin(), order.end());

    const detail::E1Adjacency adj(g, e1);
    std::vector<Colour> phi(n, -1);
    // Colours are handed to the checker as-is; -1 marks "uncoloured", so
    // negative list colours are shifted out of the way first.
    Colour lo = 0;
    for (const auto& li : l)
        if (!li.empty()) lo = std::min(lo, li.front());
    const Colour shift = lo < 0 ? -lo : 0;

    auto search = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == order.size()) return true;
        const int x = order[pos];
        for (Colour c : l[x]) {
            const Colour cc = c + shift;
            if (detail::clashes(g, phi, x, cc)) continue;
            phi[x] = cc;
            if (!detail::closes_bicoloured_cycle(adj, phi, x) && self(self, pos + 1)) return true;
            phi[x] = -1;
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    for (auto& c : phi) c -= shift;
    return sparse_colouring(g, phi);
}

Colouring rainbow_base(const EmbeddedGraph& g, const ListAssignment& lists, int k) {
    if (g.vertex_count() > k)
        throw PreconditionError("rainbow base case needs at most " + std::to_string(k) + " vertices");
    Colouring out;
    std::set<Colour> used;
    for (int i = 0; i < g.vertex_count(); ++i) {
        const VertexId v = g.vertex_id(i);
        auto it = lists.find(v);
        if (it == lists.end()) throw PreconditionError("no list for vertex " + std::to_string(v));
        bool done = false;
        for (Colour c : it->second) {
            if (used.count(c)) continue;
            out[v] = c;
            used.insert(c);
            done = true;
            break;
        }
        if (!done) throw PreconditionError("list of vertex " + std::to_string(v) + " is too short for a rainbow colouring");
    }
    return out;
}

} // namespace surfcol
