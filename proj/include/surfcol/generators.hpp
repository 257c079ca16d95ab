#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surfcol/colouring.hpp"
#include "surfcol/embedding.hpp"

namespace surfcol {

/// Orientable, all-positive embedding of a simple graph on vertices 0..n-1
/// whose faces are the given closed walks (each edge traversed once in each
/// direction overall).
EmbeddedGraph from_oriented_faces(int n, const std::vector<std::vector<int>>& faces);

/// m x n toroidal quadrangulation; vertex (i, j) has id i*n + j.
EmbeddedGraph torus_grid_quad(int m, int n);
/// torus_grid_quad with the diagonal (i,j)-(i+1,j+1) in every face: 6-regular triangulation.
EmbeddedGraph torus_grid_tri(int m, int n);
/// m x n quadrangulation of the Klein bottle (rows glued with a reflection).
EmbeddedGraph klein_grid(int m, int n);
/// Wheel with hub 0 and rim 1..n whose rim is one-sided (projective plane).
EmbeddedGraph projective_wheel(int n);
EmbeddedGraph random_planar_triangulation(int n, std::uint64_t seed);
EmbeddedGraph icosahedron();
/// K7 triangulating the torus.
EmbeddedGraph k7_torus();
/// Connected simple graph with a uniformly shuffled rotation at every vertex;
/// each edge is negative with probability `negative_prob`.
EmbeddedGraph random_embedded_graph(int n, int m, std::uint64_t seed, double negative_prob = 0.0);

enum class E1Policy { all, none, random };
enum class Family {
    torus_grid_quad,
    torus_grid_tri,
    klein_grid,
    projective_wheel,
    random_planar_triangulation,
    icosahedron,
    k7_torus,
};

struct GeneratorSpec {
    Family family = Family::torus_grid_tri;
    int m = 3;
    int n = 3;
    std::uint64_t seed = 0;
    E1Policy e1 = E1Policy::all;
    double e1_probability = 0.5;
    std::uint64_t e1_seed = 0;
    int palette = 30;
    int k = kListSize;
    std::uint64_t list_seed = 0;
};

struct Instance {
    EmbeddedGraph graph;
    EdgeClassing e1;
    ListAssignment lists;
};

Family parse_family(const std::string& name);
std::string family_name(Family f);

/// Deterministic given the seeds in `spec`.  Throws PreconditionError for
/// grid sizes below 3.
Instance generate(const GeneratorSpec& spec);

EdgeClassing random_e1(const EmbeddedGraph& g, double probability, std::uint64_t seed);
/// Each vertex draws `k` distinct colours from 1..palette.
ListAssignment palette_lists(const EmbeddedGraph& g, int palette, int k, std::uint64_t seed);

/// Small deterministic PRNG wrapper; identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform in [0, bound).
    int below(int bound);
    double unit();
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[below(i + 1)]);
    }

private:
    std::uint64_t state_;
};

} // namespace surfcol
