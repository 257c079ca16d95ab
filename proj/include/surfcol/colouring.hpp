#pragma once

#include <map>
#include <optional>
#include <vector>

#include "surfcol/embedding.hpp"

namespace surfcol {

using Colour = int;
/// L(v) for every vertex; colours are opaque integers.
using ListAssignment = std::map<VertexId, std::vector<Colour>>;
/// Total map vertex -> colour.
using Colouring = std::map<VertexId, Colour>;

inline constexpr int kListSize = 9;

/// Sorts each list, removes duplicates and keeps the `k` smallest colours.
/// Throws PreconditionError when some vertex has fewer than `k` colours.
ListAssignment normalize_lists(const EmbeddedGraph& g, const ListAssignment& lists, int k = kListSize);

/// Dense form indexed by vertex index; throws PreconditionError when the
/// colouring misses a vertex of `g`.
std::vector<Colour> dense_colouring(const EmbeddedGraph& g, const Colouring& phi);
Colouring sparse_colouring(const EmbeddedGraph& g, const std::vector<Colour>& dense);

bool is_proper(const EmbeddedGraph& g, const Colouring& phi);
bool respects_lists(const Colouring& phi, const ListAssignment& lists);

struct AcyclicityVerdict {
    bool acyclic = true;
    /// A bicoloured E1-cycle when `acyclic` is false.
    std::optional<CycleInEmbedding> witness;
};

/// Checks that no E1-cycle is bicoloured by testing, for every colour pair,
/// that the E1-edges between the two colour classes form a forest.
/// Throws PreconditionError when `phi` is not proper.
AcyclicityVerdict is_e1_acyclic(const EmbeddedGraph& g, const EdgeClassing& e1, const Colouring& phi);

/// Backtracking search over a degeneracy order.  Returns std::nullopt when no
/// E1-acyclic L-colouring exists.
std::optional<Colouring> exact_solve(const EmbeddedGraph& g, const EdgeClassing& e1, const ListAssignment& lists);

/// Greedy all-distinct colouring for graphs on at most `k` vertices.
Colouring rainbow_base(const EmbeddedGraph& g, const ListAssignment& lists, int k = kListSize);

namespace detail {

/// Per-vertex E1 adjacency, built once per graph.
struct E1Adjacency {
    std::vector<std::vector<int>> nbrs;
    E1Adjacency(const EmbeddedGraph& g, const EdgeClassing& e1);
};

/// With `phi` partial (uncoloured = -1) and already E1-acyclic away from `x`,
/// reports whether the colour currently at `x` closes a bicoloured E1-cycle.
bool closes_bicoloured_cycle(const E1Adjacency& adj, const std::vector<Colour>& phi, int x);

/// True iff some neighbour of `x` (any edge class) carries colour `c`.
bool clashes(const EmbeddedGraph& g, const std::vector<Colour>& phi, int x, Colour c);

} // namespace detail

} // namespace surfcol
