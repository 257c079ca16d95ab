#include <doctest.h>

#include <set>

#include "surfcol/generators.hpp"
#include "surfcol/reducer.hpp"
#include "test_support.hpp"

using namespace surfcol;
using namespace surfcol::testing;

namespace {

EmbeddedGraph octahedron() {
    return from_oriented_faces(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                   {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

ListAssignment full_lists(const EmbeddedGraph& g) {
    ListAssignment l;
    for (VertexId v : g.vertex_ids()) l[v] = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    return l;
}

void check_solution(const EmbeddedGraph& g, const EdgeClassing& e1, const ListAssignment& lists,
                    const Colouring& phi) {
    REQUIRE(phi.size() == static_cast<std::size_t>(g.vertex_count()));
    CHECK(is_proper(g, phi));
    CHECK(respects_lists(phi, lists));
    auto verdict = is_e1_acyclic(g, e1, phi);
    CHECK(verdict.acyclic);
}

void check_trace(const ReductionTrace& trace) {
    for (const auto& s : trace.steps) {
        if (!s.deleted) {
            CHECK(s.path == "none");
            continue;
        }
        CHECK(s.path != "none");
        CHECK(std::find(s.neighbour_colours.begin(), s.neighbour_colours.end(), s.colour) ==
              s.neighbour_colours.end());
    }
}

} // namespace

TEST_CASE("detect_configuration examples") {
    // A 4-cycle with one diagonal has two 2-vertices and two 3-vertices.
    auto g = from_oriented_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 2, 1}});
    auto cfg = detect_configuration(g, EdgeClassing::all_edges(g));
    CHECK(cfg.kind == ConfigKind::DEG3MINUS);
    CHECK(cfg.anchor == 0); // vertex 0 has degree 3, the lowest id

    auto ico = icosahedron();
    CHECK(detect_configuration(ico, EdgeClassing::all_edges(ico)).kind == ConfigKind::FIVE_ADJ_6_7);

    auto k7 = k7_torus();
    auto c7 = detect_configuration(k7, EdgeClassing::all_edges(k7));
    CHECK(c7.kind == ConfigKind::TRIANGULAR6_CLUSTER);
    CHECK(c7.anchor == 0);

    auto oct = octahedron();
    auto co = detect_configuration(oct, EdgeClassing::all_edges(oct));
    CHECK(co.kind == ConfigKind::FOUR_ADJ_8MINUS);
    REQUIRE(co.labels.size() == 4);
    CHECK(co.chords.size() == 1);

    // With no E1-edges every 8^- vertex is LOW_E1 (degree 4 here).
    CHECK(detect_configuration(oct, EdgeClassing{}).kind == ConfigKind::LOW_E1);
}

TEST_CASE("detect_configuration: saturation and the five-vertex kinds") {
    // Deleting an edge of a triangulation leaves unsaturated E1 corners.
    auto tri = torus_grid_tri(4, 4);
    auto e1 = EdgeClassing::all_edges(tri);
    auto e = *tri.find_edge(0, 1);
    auto missing = remove_edge(tri, e);
    auto cfg = detect_configuration(missing, e1.restricted_to(missing));
    CHECK(cfg.kind == ConfigKind::SATURATION);
    auto step = reduce_once(missing, e1.restricted_to(missing), cfg);
    CHECK_FALSE(step.deleted.has_value());
    CHECK(step.child.vertex_count() == missing.vertex_count());
    CHECK(step.child.edge_count() == missing.edge_count() + 1);
    CHECK_FALSE(step.child_e1.contains(step.added.at(0)));

    // Icosahedron with one non-E1 edge at a vertex: FIVE_E1FOUR_7MINUS fires.
    auto ico = icosahedron();
    auto ie = *ico.find_edge(0, ico.neighbours(0)[1]);
    auto e1i = EdgeClassing::all_edges(ico).without(std::vector<EdgeId>{ico.edge_id(ie)});
    auto c = detect_configuration(ico, e1i);
    CHECK(c.kind == ConfigKind::FIVE_E1FOUR_7MINUS);
    CHECK(c.chords.size() == 2);
}

TEST_CASE("reduce_once examples") {
    auto oct = octahedron();
    auto e1 = EdgeClassing::all_edges(oct);
    auto cfg = detect_configuration(oct, e1);
    auto step = reduce_once(oct, e1, cfg);
    REQUIRE(step.deleted.has_value());
    CHECK(*step.deleted == cfg.anchor);
    CHECK_FALSE(step.child.find_vertex(cfg.anchor).has_value());
    const int a = step.child.vertex_index(cfg.labels[1]), b = step.child.vertex_index(cfg.labels[3]);
    auto chord = step.child.find_edge(a, b);
    REQUIRE(chord.has_value());
    CHECK_FALSE(step.child_e1.contains(step.child.edge_id(*chord)));
    CHECK(euler_genus(step.child) == 0);

    // K7: every chord among v1, v3, v5 already exists, so all are skipped.
    auto k7 = k7_torus();
    auto e7 = EdgeClassing::all_edges(k7);
    auto c7 = detect_configuration(k7, e7);
    auto s7 = reduce_once(k7, e7, c7);
    CHECK(s7.child.vertex_count() == 6);
    CHECK(s7.child.edge_count() == 15);
    CHECK(s7.added.empty());
    CHECK(s7.skipped.size() == c7.chords.size());

    // Stale configuration.
    CHECK_THROWS_AS(reduce_once(step.child, step.child_e1, cfg), PreconditionError);
}

TEST_CASE("extend_at_vertex and recolour_vertex") {
    // v=0 with E1-neighbours a=1, b=2; a's other neighbour c=3; b's other neighbour d=4.
    auto g = make_graph(5, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 4, 1}},
                        {{{0, 0}, {1, 0}}, {{0, 1}, {2, 0}}, {{1, 1}, {3, 0}}, {{2, 1}}, {{3, 1}}});
    auto e1 = EdgeClassing::all_edges(g);
    auto lists = full_lists(g);
    Colouring phi{{1, 1}, {2, 1}, {3, 2}, {4, 3}};
    auto c = extend_at_vertex(g, e1, 0, phi, {1}, lists);
    REQUIRE(c.has_value());
    CHECK(*c != 1);
    CHECK(*c != 2);
    phi[0] = *c;
    CHECK(is_e1_acyclic(g, e1, phi).acyclic);
    phi.erase(0);
    CHECK_THROWS_AS(extend_at_vertex(g, e1, 0, phi, {}, lists), PreconditionError);
    CHECK_THROWS_AS(extend_at_vertex(g, e1, 0, phi, {3}, lists), PreconditionError);
    ListAssignment tight = lists;
    tight[0] = {1, 2};
    CHECK_FALSE(extend_at_vertex(g, e1, 0, phi, {1}, tight).has_value());

    Colouring full{{0, 5}, {1, 1}, {2, 2}, {3, 2}, {4, 3}};
    auto r = recolour_vertex(g, EdgeClassing{}, full, 0, {5, 1, 2}, lists);
    REQUIRE(r.has_value());
    CHECK(*r == 3);
    ListAssignment small = lists;
    small[0] = {1, 2, 5};
    CHECK_FALSE(recolour_vertex(g, EdgeClassing{}, full, 0, {5, 1, 2}, small).has_value());
    Colouring mono{{0, 5}, {1, 1}, {2, 1}, {3, 2}, {4, 3}};
    CHECK_THROWS_AS(recolour_vertex(g, e1, mono, 0, {5, 1}, lists), PreconditionError);
}

TEST_CASE("solve_by_reduction: base case and small graphs") {
    auto t = triangle();
    auto lists = full_lists(t);
    ReductionTrace trace;
    auto phi = solve_by_reduction(t, EdgeClassing::all_edges(t), lists, {}, &trace);
    check_solution(t, EdgeClassing::all_edges(t), lists, phi);
    CHECK(trace.steps.empty());
    REQUIRE(trace.base_cases.size() == 1);
    CHECK(trace.base_cases[0] == "rainbow");

    auto short_lists = lists;
    short_lists[0] = {1, 2};
    CHECK_THROWS_AS(solve_by_reduction(t, EdgeClassing{}, short_lists), PreconditionError);
}

TEST_CASE("solve_by_reduction on the generator families") {
    std::vector<std::pair<std::string, EmbeddedGraph>> cases = {
        {"tri7x7", torus_grid_tri(7, 7)}, {"k7", k7_torus()},        {"ico", icosahedron()},
        {"klein5x6", klein_grid(5, 6)},   {"pw12", projective_wheel(12)}, {"quad4x5", torus_grid_quad(4, 5)},
    };
    std::uint64_t seed = 1;
    for (auto& [name, g] : cases) {
        CAPTURE(name);
        auto e1 = EdgeClassing::all_edges(g);
        auto lists = palette_lists(g, 30, 9, seed++);
        ReductionTrace trace;
        auto phi = solve_by_reduction(g, e1, lists, {}, &trace);
        check_solution(g, e1, lists, phi);
        check_trace(trace);
    }
}

TEST_CASE("solve_by_reduction on planar triangulations") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto g = random_planar_triangulation(12 + static_cast<int>(seed % 30), seed);
        auto e1 = seed % 2 ? EdgeClassing::all_edges(g) : random_e1(g, 0.6, seed);
        auto lists = palette_lists(g, 20, 9, seed);
        ReductionTrace trace;
        auto phi = solve_by_reduction(g, e1, lists, {}, &trace);
        check_solution(g, e1, lists, phi);
        check_trace(trace);
    }
}

TEST_CASE("solve_by_reduction soundness on a randomized corpus") {
    int runs = 0;
    std::map<std::string, int> kinds, paths;
    for (std::uint64_t seed = 1; runs < 500; ++seed) {
        Rng rng(seed);
        EmbeddedGraph g;
        switch (seed % 5) {
        case 0: g = torus_grid_tri(3 + rng.below(4), 3 + rng.below(4)); break;
        case 1: g = klein_grid(3 + rng.below(3), 3 + rng.below(3)); break;
        case 2: g = projective_wheel(5 + rng.below(10)); break;
        case 3: g = random_planar_triangulation(10 + rng.below(20), seed); break;
        default: {
            int n = 10 + rng.below(5);
            g = random_embedded_graph(n, n + rng.below(2 * n), seed, 0.2);
        }
        }
        EdgeClassing e1 = seed % 3 == 0 ? random_e1(g, 0.5, seed) : EdgeClassing::all_edges(g);
        auto lists = palette_lists(g, 12 + rng.below(20), 9, seed);
        ReductionTrace trace;
        auto phi = solve_by_reduction(g, e1, lists, {}, &trace);
        check_solution(g, e1, lists, phi);
        check_trace(trace);
        for (const auto& s : trace.steps) {
            kinds[to_string(s.kind)]++;
            paths[s.path]++;
        }
        ++runs;
    }
    for (auto [k, n] : kinds) MESSAGE(k << ": " << n);
    for (auto [p, n] : paths) MESSAGE("path " << p << ": " << n);
    CHECK(kinds.size() >= 5);
}

TEST_CASE("termination measure decreases at every step") {
    auto g = torus_grid_tri(6, 6);
    EdgeClassing e1 = EdgeClassing::all_edges(g);
    EmbeddedGraph cur = g;
    int steps = 0;
    while (cur.vertex_count() > 9) {
        auto cfg = detect_configuration(cur, e1);
        REQUIRE(cfg.found());
        auto step = reduce_once(cur, e1, cfg);
        const bool fewer = step.child.vertex_count() < cur.vertex_count();
        const bool same_more = step.child.vertex_count() == cur.vertex_count() &&
                               step.child.edge_count() > cur.edge_count();
        CHECK((fewer || same_more));
        CHECK(step.child.is_simple());
        if (cfg.kind == ConfigKind::LOW_E1 || cfg.kind == ConfigKind::DEG3MINUS) {
            auto next = detect_configuration(step.child, step.child_e1);
            CHECK((next.anchor != cfg.anchor || !next.found()));
        }
        cur = step.child;
        e1 = step.child_e1;
        ++steps;
    }
    CHECK(steps > 0);
}
