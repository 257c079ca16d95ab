#include <doctest.h>

#include <set>

#include "surfcol/colouring.hpp"
#include "surfcol/generators.hpp"
#include "test_support.hpp"

using namespace surfcol;
using namespace surfcol::testing;

namespace {

ListAssignment uniform_lists(const EmbeddedGraph& g, std::vector<Colour> l) {
    ListAssignment out;
    for (VertexId v : g.vertex_ids()) out[v] = l;
    return out;
}

Colouring by_index(const EmbeddedGraph& g, std::vector<Colour> c) {
    return sparse_colouring(g, c);
}

/// Naive: some all-E1 simple cycle uses exactly two colours.
bool naive_has_bicoloured_e1_cycle(const EmbeddedGraph& g, const EdgeClassing& e1, const std::vector<Colour>& c) {
    for (const auto& cyc : all_simple_cycles(g)) {
        bool all_e1 = true;
        for (int e : cyc.edges) all_e1 = all_e1 && e1.contains_index(g, e);
        if (!all_e1) continue;
        std::set<Colour> cols;
        for (int v : cyc.vertices) cols.insert(c[v]);
        if (cols.size() == 2) return true;
    }
    return false;
}

/// Exhaustive feasibility over every choice of list colours.
bool brute_force_feasible(const EmbeddedGraph& g, const EdgeClassing& e1, const ListAssignment& lists) {
    const int n = g.vertex_count();
    std::vector<Colour> c(n);
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) {
            auto phi = sparse_colouring(g, c);
            return is_proper(g, phi) && is_e1_acyclic(g, e1, phi).acyclic;
        }
        for (Colour x : lists.at(g.vertex_id(i))) {
            c[i] = x;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

EmbeddedGraph c4() { return cycle_graph(4); }

} // namespace

TEST_CASE("is_proper") {
    auto t = triangle();
    CHECK(is_proper(t, by_index(t, {1, 2, 3})));
    CHECK_FALSE(is_proper(t, by_index(t, {1, 1, 3})));
    CHECK(is_proper(c4(), by_index(c4(), {1, 2, 1, 2})));
    CHECK_THROWS_AS(is_proper(t, Colouring{{0, 1}}), PreconditionError);
}

TEST_CASE("is_e1_acyclic on C4") {
    auto g = c4();
    auto all = EdgeClassing::all_edges(g);
    auto v = is_e1_acyclic(g, all, by_index(g, {1, 2, 1, 2}));
    CHECK_FALSE(v.acyclic);
    REQUIRE(v.witness.has_value());
    CHECK_NOTHROW(validate_cycle(g, *v.witness));
    CHECK(v.witness->length() == 4);

    auto one_out = all.without(std::vector<EdgeId>{g.edge_id(0)});
    CHECK(is_e1_acyclic(g, one_out, by_index(g, {1, 2, 1, 2})).acyclic);
    CHECK(is_e1_acyclic(g, all, by_index(g, {1, 2, 1, 3})).acyclic);
    CHECK_THROWS_AS(is_e1_acyclic(g, all, by_index(g, {1, 1, 2, 3})), PreconditionError);

    auto t = triangle();
    CHECK(is_e1_acyclic(t, EdgeClassing::all_edges(t), by_index(t, {4, 5, 6})).acyclic);
}

TEST_CASE("forest check agrees with naive cycle enumeration") {
    int compared = 0, cyclic = 0;
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        Rng rng(seed);
        int n = 4 + rng.below(7);
        int m = std::min(n * (n - 1) / 2, n + rng.below(2 * n));
        auto g = random_embedded_graph(n, m, seed);
        auto e1 = seed % 2 ? EdgeClassing::all_edges(g) : random_e1(g, 0.7, seed);
        // Random proper colouring with few colours so bicoloured cycles occur.
        for (int attempt = 0; attempt < 5; ++attempt) {
            std::vector<Colour> c(n, -1);
            bool ok = true;
            for (int x = 0; x < n && ok; ++x) {
                std::vector<Colour> options;
                for (Colour k = 1; k <= 4; ++k)
                    if (!detail::clashes(g, c, x, k)) options.push_back(k);
                if (options.empty()) ok = false;
                else c[x] = options[rng.below(static_cast<int>(options.size()))];
            }
            if (!ok) continue;
            auto verdict = is_e1_acyclic(g, e1, sparse_colouring(g, c));
            bool naive = naive_has_bicoloured_e1_cycle(g, e1, c);
            CHECK(verdict.acyclic == !naive);
            if (!verdict.acyclic) {
                ++cyclic;
                REQUIRE(verdict.witness.has_value());
                CHECK_NOTHROW(validate_cycle(g, *verdict.witness));
                std::set<Colour> cols;
                for (int v : verdict.witness->vertices) cols.insert(c[v]);
                CHECK(cols.size() == 2);
                for (int e : verdict.witness->edges) CHECK(e1.contains_index(g, e));
            }
            ++compared;
        }
    }
    CHECK(compared > 200);
    CHECK(cyclic > 20);
}

TEST_CASE("exact_solve examples") {
    auto t = triangle();
    auto phi = exact_solve(t, EdgeClassing::all_edges(t), uniform_lists(t, {1, 2, 3}));
    REQUIRE(phi.has_value());
    CHECK(is_proper(t, *phi));

    auto g = c4();
    auto all = EdgeClassing::all_edges(g);
    CHECK_FALSE(exact_solve(g, all, uniform_lists(g, {1, 2})).has_value());
    CHECK_FALSE(brute_force_feasible(g, all, uniform_lists(g, {1, 2})));
    auto three = exact_solve(g, all, uniform_lists(g, {1, 2, 3}));
    REQUIRE(three.has_value());
    CHECK(is_e1_acyclic(g, all, *three).acyclic);
    // With one non-E1 edge two colours suffice.
    auto relaxed = all.without(std::vector<EdgeId>{g.edge_id(1)});
    CHECK(exact_solve(g, relaxed, uniform_lists(g, {1, 2})).has_value());
    // Negative colours are opaque too.
    auto neg = exact_solve(g, all, uniform_lists(g, {-3, -2, -1}));
    REQUIRE(neg.has_value());
    CHECK(respects_lists(*neg, uniform_lists(g, {-3, -2, -1})));
}

TEST_CASE("exact_solve against brute force") {
    int feasible = 0, infeasible = 0;
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        Rng rng(seed);
        int n = 3 + rng.below(6);
        int m = std::min(n * (n - 1) / 2, n - 1 + rng.below(2 * n));
        auto g = random_embedded_graph(n, m, seed);
        auto e1 = random_e1(g, 0.8, seed);
        auto lists = palette_lists(g, 4, 2 + rng.below(2), seed);
        auto phi = exact_solve(g, e1, lists);
        bool bf = brute_force_feasible(g, e1, lists);
        CHECK(phi.has_value() == bf);
        if (phi) {
            ++feasible;
            CHECK(is_proper(g, *phi));
            CHECK(respects_lists(*phi, lists));
            CHECK(is_e1_acyclic(g, e1, *phi).acyclic);
            // Enlarging lists keeps it feasible.
            auto bigger = lists;
            for (auto& [v, l] : bigger) l.push_back(100 + v);
            CHECK(exact_solve(g, e1, bigger).has_value());
        } else {
            ++infeasible;
        }
    }
    CHECK(feasible > 10);
    CHECK(infeasible > 10);
}

TEST_CASE("rainbow_base") {
    auto single = make_graph(1, {}, {{}});
    auto r1 = rainbow_base(single, {{0, {7, 8, 9, 10, 11, 12, 13, 14, 15}}});
    CHECK(r1.at(0) == 7);

    auto k4 = from_oriented_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
    ListAssignment l;
    for (int v = 0; v < 4; ++v) l[v] = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    auto r = rainbow_base(k4, l);
    std::set<Colour> cols;
    for (auto [v, c] : r) cols.insert(c);
    CHECK(cols.size() == 4);

    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto g = random_embedded_graph(9, 20, seed);
        // Adversarial: lists drawn from only 10 colours so they overlap heavily.
        auto lists = palette_lists(g, 10, 9, seed);
        auto phi = rainbow_base(g, lists);
        std::set<Colour> used;
        for (auto [v, c] : phi) used.insert(c);
        CHECK(used.size() == 9);
        CHECK(respects_lists(phi, lists));
        CHECK(is_e1_acyclic(g, EdgeClassing::all_edges(g), phi).acyclic);
    }
    CHECK_THROWS_AS(rainbow_base(torus_grid_tri(3, 4), {}), PreconditionError);
}

TEST_CASE("normalize_lists") {
    auto t = triangle();
    ListAssignment l;
    for (int v = 0; v < 3; ++v) l[v] = {12, 3, 3, 1, 9, 8, 7, 6, 5, 4, 2, 11};
    auto n = normalize_lists(t, l);
    CHECK(n.at(0) == std::vector<Colour>{1, 2, 3, 4, 5, 6, 7, 8, 9});
    l[1] = {1, 1, 2};
    CHECK_THROWS_AS(normalize_lists(t, l), PreconditionError);
}
