#pragma once

#include <optional>
#include <string>

#include "surfcol/embedding.hpp"

namespace surfcol {

enum class WidthStatus {
    finite,
    /// Euler genus 0: the width is infinite by definition.
    sphere,
    /// The search found no non-contractible cycle within the weight budget.
    bounded_infinite,
};

std::string to_string(WidthStatus s);

/// ew_t(G, E1): the minimum over non-contractible cycles C of
/// |E1 & E(C)| + t * |E(C) \ E1|.
struct WeightedWidthResult {
    WidthStatus status = WidthStatus::sphere;
    int width = 0; ///< meaningful only when status == finite
    std::optional<CycleInEmbedding> witness;

    bool infinite() const { return status != WidthStatus::finite; }
};

int cycle_weight(const EmbeddedGraph& g, const EdgeClassing& e1, const CycleInEmbedding& c, int t);

/// Exhaustive simple-cycle enumeration with branch-and-bound.  Only cycles of
/// weight <= `budget` are considered when a budget is given.
WeightedWidthResult weighted_edge_width_oracle(const EmbeddedGraph& g, const EdgeClassing& e1, int t,
                                               std::optional<int> budget = std::nullopt);

/// Minimum over fundamental cycles of shortest-path trees from every root.
/// Never below the oracle value; equality is checked by the test-suite.
WeightedWidthResult weighted_edge_width_fast(const EmbeddedGraph& g, const EdgeClassing& e1, int t);

} // namespace surfcol
