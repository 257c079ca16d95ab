#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <optional>

#include "surfcol/colouring.hpp"
#include "surfcol/io.hpp"

namespace surfcol::cli {

enum ExitCode { kOk = 0, kNegative = 1, kInputError = 2 };

/// Runs one subcommand.  `args` excludes the program name.  Results go to
/// `out` as JSON; input errors produce {"error": ...} on `out` and exit 2.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Verdict of `check`: completeness, properness, E1-acyclicity (with a
/// witness cycle) and, when lists are given, list membership.  "valid" is
/// the conjunction.
io::Json check_report(const EmbeddedGraph& g, const EdgeClassing& e1, const Colouring& phi,
                      const std::optional<ListAssignment>& lists);

/// Connected components as separate embeddings (ids preserved).
std::vector<EmbeddedGraph> components(const EmbeddedGraph& g);

} // namespace surfcol::cli
