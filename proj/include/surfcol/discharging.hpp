#pragma once

#include <array>
#include <string>
#include <vector>

#include "surfcol/embedding.hpp"
#include "surfcol/rational.hpp"
#include "surfcol/reducer.hpp"

namespace surfcol {

enum class Rule { R1, R2, R3 };
std::string to_string(Rule r);

/// One movement of charge.  Faces are indices into trace_faces(g); vertices
/// are vertex indices.
struct Transfer {
    Rule rule = Rule::R1;
    bool from_face = false;
    int source = 0;
    int sink = 0; ///< always a vertex
    Rational amount;
    /// R2 only: the share was meant for the 7^+ vertex `via` and redirected.
    bool redirected = false;
    int via = -1;
};

/// Exact charges per stage: index 0 is ch0 (initial), index i is ch_i (after Ri).
struct ChargeLedger {
    int stages = 0; ///< number of populated stages (1 after initial_charges, 4 after apply_rules)
    std::array<std::vector<Rational>, 4> vertex;
    std::array<std::vector<Rational>, 4> face;
    std::vector<Transfer> log;
    /// Face lengths, recorded so that ledger/graph mismatches can be detected.
    std::vector<int> face_lengths;

    Rational total(int stage) const;
};

/// ch0(v) = deg(v) - 6 and ch0(f) = 2(deg(f) - 3).
ChargeLedger initial_charges(const EmbeddedGraph& g);

/// Applies R1, R2 and R3 in order.  Throws PreconditionError unless
/// 0 < epsilon <= 1/43 and the ledger holds exactly ch0 for `g`.
ChargeLedger apply_rules(const EmbeddedGraph& g, const ChargeLedger& ledger, const Rational& epsilon);

struct DischargeReport {
    std::array<Rational, 4> totals;
    bool conserved = true;
    Rational expected_total; ///< 6(e - v - f)
    bool initial_total_matches = true;
    std::vector<std::pair<VertexId, Rational>> deficient_vertices; ///< ch3 < epsilon
    std::vector<std::pair<int, Rational>> negative_faces;          ///< ch3 < 0
    ConfigKind config = ConfigKind::NONE;
    /// True unless the graph is configuration-free and still has deficiencies.
    bool charges_consistent = true;
    int redirection_checks = 0;
    std::vector<std::string> redirection_violations;
    std::vector<std::string> budget_violations; ///< R2 senders exceeding ch0 - epsilon
};

/// Throws PreconditionError on ledger/graph mismatch or an incomplete ledger.
DischargeReport verify_final(const EmbeddedGraph& g, const ChargeLedger& ledger, const Rational& epsilon,
                             ConfigKind cfg_status);

/// 12(g - 2) / epsilon.
Rational required_rho(int genus, const Rational& epsilon);

} // namespace surfcol
