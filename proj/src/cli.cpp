#include "surfcol/cli.hpp"

#include <iostream>
#include <numeric>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "surfcol/discharging.hpp"
#include "surfcol/edge_width.hpp"
#include "surfcol/generators.hpp"
#include "surfcol/io.hpp"
#include "surfcol/reducer.hpp"

namespace surfcol::cli {

using io::Json;

std::vector<EmbeddedGraph> components(const EmbeddedGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = count;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : g.neighbours(x))
                if (comp[y] < 0) comp[y] = count, stack.push_back(y);
        }
        ++count;
    }
    if (count <= 1) return {g};
    std::vector<std::vector<VertexId>> vs(count);
    std::vector<std::vector<EdgeSpec>> es(count);
    std::vector<RotationSpec> rs(count);
    const auto specs = g.edge_specs();
    const auto rot = g.rotation_spec();
    for (int x = 0; x < n; ++x) {
        vs[comp[x]].push_back(g.vertex_id(x));
        rs[comp[x]][g.vertex_id(x)] = rot.at(g.vertex_id(x));
    }
    for (int e = 0; e < g.edge_count(); ++e) es[comp[g.edge_u(e)]].push_back(specs[e]);
    std::vector<EmbeddedGraph> out;
    for (int c = 0; c < count; ++c) out.push_back(EmbeddedGraph::build(vs[c], es[c], rs[c]));
    return out;
}

Json check_report(const EmbeddedGraph& g, const EdgeClassing& e1, const Colouring& phi,
                  const std::optional<ListAssignment>& lists) {
    Json out;
    std::vector<VertexId> missing, unknown;
    for (VertexId v : g.vertex_ids())
        if (!phi.count(v)) missing.push_back(v);
    for (const auto& [v, col] : phi)
        if (!g.find_vertex(v)) unknown.push_back(v);
    bool valid = missing.empty() && unknown.empty();
    out["complete"] = valid;
    if (!missing.empty()) out["missing_vertices"] = missing;
    if (!unknown.empty()) out["unknown_vertices"] = unknown;

    if (valid) {
        const bool proper = is_proper(g, phi);
        out["proper"] = proper;
        if (!proper) {
            for (int e = 0; e < g.edge_count(); ++e)
                if (phi.at(g.vertex_id(g.edge_u(e))) == phi.at(g.vertex_id(g.edge_v(e)))) {
                    out["conflict_edge"] = g.edge_id(e);
                    break;
                }
            valid = false;
        } else {
            const auto verdict = is_e1_acyclic(g, e1, phi);
            out["e1_acyclic"] = verdict.acyclic;
            if (verdict.witness) out["witness"] = io::cycle_to_json(g, *verdict.witness);
            valid = verdict.acyclic;
        }
    }
    if (lists) {
        const bool ok = respects_lists(phi, *lists);
        out["respects_lists"] = ok;
        valid = valid && ok;
    }
    out["valid"] = valid;
    return out;
}

namespace {

struct Common {
    std::string graph_path;
    std::string lists_path;
    bool pretty = false;
};

/// A graph file may also be an instance object {"graph": ..., "lists": ...}.
struct Loaded {
    io::GraphFile file;
    std::optional<ListAssignment> lists;
};

Loaded load_graph(const std::string& path) {
    Json j = io::read_json_file(path);
    Loaded l;
    if (j.is_object() && j.contains("graph")) {
        l.file = io::graph_from_json(j["graph"]);
        if (j.contains("lists")) l.lists = io::lists_from_json(j["lists"]);
    } else {
        l.file = io::graph_from_json(j);
    }
    return l;
}

ListAssignment load_lists(const Loaded& g, const std::string& path) {
    if (!path.empty()) return io::lists_from_json(io::read_json_file(path));
    if (g.lists) return *g.lists;
    throw InvalidInput("no list assignment given (use --lists or an instance file with \"lists\")");
}

/// Accepts a bare colouring map or any object carrying one under "colouring".
Colouring load_colouring(const std::string& path) {
    Json j = io::read_json_file(path);
    if (j.is_object() && j.contains("colouring")) return io::colouring_from_json(j["colouring"]);
    return io::colouring_from_json(j);
}

EdgeClassing restrict(const EdgeClassing& e1, const EmbeddedGraph& g) { return e1.restricted_to(g); }

int cmd_ew(const Common& c, int t, std::optional<int> budget, bool fast, Json& out) {
    auto l = load_graph(c.graph_path);
    if (budget && fast) throw InvalidInput("--budget applies to the exact oracle only");
    const auto r = fast ? weighted_edge_width_fast(l.file.graph, l.file.e1, t)
                        : weighted_edge_width_oracle(l.file.graph, l.file.e1, t, budget);
    out = io::width_to_json(l.file.graph, r);
    out["t"] = t;
    out["method"] = fast ? "fast" : "oracle";
    out["genus"] = euler_genus(l.file.graph);
    return kOk;
}

int cmd_check(const Common& c, const std::string& colouring_path, Json& out) {
    auto l = load_graph(c.graph_path);
    const Colouring phi = load_colouring(colouring_path);
    std::optional<ListAssignment> lists;
    if (!c.lists_path.empty() || l.lists) lists = load_lists(l, c.lists_path);
    out = check_report(l.file.graph, l.file.e1, phi, lists);
    return out["valid"].get<bool>() ? kOk : kNegative;
}

int cmd_solve(const Common& c, bool exact, const std::string& eps_text, const std::string& trace_path,
              bool waive, Json& out) {
    auto l = load_graph(c.graph_path);
    const ListAssignment lists = load_lists(l, c.lists_path);
    SolveOptions opt;
    opt.epsilon = parse_rational(eps_text);
    opt.waive_ew_check = waive;
    if (!l.file.graph.is_simple()) throw InvalidInput("colouring requires a simple graph");

    Colouring phi;
    ReductionTrace full;
    Json comps = Json::array();
    for (const EmbeddedGraph& part : components(l.file.graph)) {
        const EdgeClassing e1 = restrict(l.file.e1, part);
        if (exact) {
            auto r = exact_solve(part, e1, lists);
            if (!r) {
                out["status"] = "infeasible";
                return kNegative;
            }
            phi.insert(r->begin(), r->end());
            continue;
        }
        ReductionTrace t;
        try {
            auto r = solve_by_reduction(part, e1, lists, opt, &t);
            phi.insert(r.begin(), r.end());
        } catch (const ReductionFailure& f) {
            out["status"] = "reduction_failure";
            out["message"] = f.what();
            if (!trace_path.empty()) io::write_json_file(trace_path, io::trace_to_json(f.trace), c.pretty);
            return kNegative;
        }
        full.steps.insert(full.steps.end(), t.steps.begin(), t.steps.end());
        full.base_cases.insert(full.base_cases.end(), t.base_cases.begin(), t.base_cases.end());
    }
    if (!trace_path.empty()) io::write_json_file(trace_path, io::trace_to_json(full), c.pretty);
    out["status"] = "ok";
    out["method"] = exact ? "exact" : "reduction";
    if (!exact) out["steps"] = full.steps.size();
    out["colouring"] = io::colouring_to_json(phi);
    return kOk;
}

int cmd_discharge(const Common& c, const std::string& eps_text, bool log_transfers, Json& out) {
    auto l = load_graph(c.graph_path);
    const EmbeddedGraph& g = l.file.graph;
    if (!g.is_connected()) throw InvalidInput("discharging needs a connected graph");
    const Rational eps = parse_rational(eps_text);
    const auto ledger = apply_rules(g, initial_charges(g), eps);
    const ConfigKind cfg = g.is_simple() ? detect_configuration(g, l.file.e1).kind : ConfigKind::NONE;
    const auto report = verify_final(g, ledger, eps, cfg);
    out = io::discharge_to_json(g, report, log_transfers ? &ledger : nullptr);
    out["genus"] = euler_genus(g);
    out["epsilon"] = format_rational(eps);
    const bool ok = report.conserved && report.initial_total_matches && report.charges_consistent &&
                    report.redirection_violations.empty() && report.budget_violations.empty();
    return ok ? kOk : kNegative;
}

int cmd_find_config(const Common& c, Json& out) {
    auto l = load_graph(c.graph_path);
    if (!l.file.graph.is_simple()) throw InvalidInput("configuration search requires a simple graph");
    out = io::configuration_to_json(detect_configuration(l.file.graph, l.file.e1));
    return kOk;
}

int cmd_rho(int genus, const std::string& eps_text, Json& out) {
    const Rational eps = parse_rational(eps_text);
    out["genus"] = genus;
    out["epsilon"] = format_rational(eps);
    out["rho"] = format_rational(required_rho(genus, eps));
    return kOk;
}

E1Policy parse_e1_policy(const std::string& s) {
    if (s == "all") return E1Policy::all;
    if (s == "none") return E1Policy::none;
    if (s == "random") return E1Policy::random;
    throw InvalidInput("unknown E1 policy '" + s + "'");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Edge-width, acyclic list colouring and discharging on embedded graphs", "surfcol"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_flag("--pretty", c.pretty, "Indented JSON output");

    auto* ew = app.add_subcommand("ew", "Weighted edge-width");
    int t = 2;
    std::optional<int> budget;
    bool fast = false;
    ew->add_option("--graph", c.graph_path, "Graph file")->required();
    ew->add_option("--t", t, "Weight of non-E1 edges")->check(CLI::PositiveNumber);
    ew->add_option("--budget", budget, "Only look for cycles of weight <= budget");
    ew->add_flag("--fast", fast, "Fundamental-cycle heuristic instead of the exact oracle");

    auto* check = app.add_subcommand("check", "Validate a colouring");
    std::string colouring_path;
    check->add_option("--graph", c.graph_path, "Graph or instance file")->required();
    check->add_option("--colouring", colouring_path, "Colouring file")->required();
    check->add_option("--lists", c.lists_path, "List assignment file");

    auto* solve = app.add_subcommand("solve", "Find an E1-acyclic list colouring");
    bool exact = false, waive = false;
    std::string eps = kDefaultEpsilon, trace_path;
    solve->add_option("--graph", c.graph_path, "Graph or instance file")->required();
    solve->add_option("--lists", c.lists_path, "List assignment file");
    solve->add_flag("--exact", exact, "Backtracking solver instead of reduction");
    solve->add_option("--epsilon", eps, "Epsilon for the edge-width hypothesis (p/q)");
    solve->add_option("--trace", trace_path, "Write the reduction trace here");
    solve->add_flag("--waive-ew-check", waive, "Skip verifying the edge-width hypothesis");

    auto* discharge = app.add_subcommand("discharge", "Run R1-R3 and verify the final charges");
    bool log_transfers = false;
    std::string deps = kDefaultEpsilon;
    discharge->add_option("--graph", c.graph_path, "Graph file")->required();
    discharge->add_option("--epsilon", deps, "Epsilon (p/q)");
    discharge->add_flag("--log-transfers", log_transfers, "Include every transfer");

    auto* find = app.add_subcommand("find-config", "Report the first reducible configuration");
    find->add_option("--graph", c.graph_path, "Graph file")->required();

    auto* gen = app.add_subcommand("gen", "Emit a generated instance");
    std::string family = "torus_grid_tri", e1_policy = "all", graph_out, lists_out;
    GeneratorSpec spec;
    gen->add_option("--family", family, "Generator family");
    gen->add_option("--m", spec.m);
    gen->add_option("--n", spec.n);
    gen->add_option("--seed", spec.seed, "Seed for random families");
    gen->add_option("--e1", e1_policy, "all, none or random");
    gen->add_option("--e1-p", spec.e1_probability, "Probability for --e1 random");
    gen->add_option("--e1-seed", spec.e1_seed);
    gen->add_option("--palette", spec.palette, "Colours are drawn from 1..palette");
    gen->add_option("--k", spec.k, "List size");
    gen->add_option("--list-seed", spec.list_seed);
    gen->add_option("--graph-out", graph_out, "Write the graph here instead of stdout");
    gen->add_option("--lists-out", lists_out, "Write the lists here instead of stdout");

    auto* rho = app.add_subcommand("rho", "Print 12(g-2)/epsilon");
    int genus = 0;
    std::string reps = kDefaultEpsilon;
    rho->add_option("--genus", genus, "Euler genus")->required();
    rho->add_option("--epsilon", reps, "Epsilon (p/q)");

    auto fail = [&](const std::string& kind, const std::string& msg) {
        Json e{{"error", msg}, {"kind", kind}};
        out << io::dump(e, c.pretty) << '\n';
        return kInputError;
    };

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    Json result = Json::object();
    int code = kOk;
    try {
        if (*ew) code = cmd_ew(c, t, budget, fast, result);
        else if (*check) code = cmd_check(c, colouring_path, result);
        else if (*solve) code = cmd_solve(c, exact, eps, trace_path, waive, result);
        else if (*discharge) code = cmd_discharge(c, deps, log_transfers, result);
        else if (*find) code = cmd_find_config(c, result);
        else if (*rho) code = cmd_rho(genus, reps, result);
        else if (*gen) {
            spec.family = parse_family(family);
            spec.e1 = parse_e1_policy(e1_policy);
            const Instance inst = generate(spec);
            Json g = io::graph_to_json(inst.graph, inst.e1);
            Json l = io::lists_to_json(inst.lists);
            if (!graph_out.empty()) io::write_json_file(graph_out, g, c.pretty);
            else result["graph"] = std::move(g);
            if (!lists_out.empty()) io::write_json_file(lists_out, l, c.pretty);
            else result["lists"] = std::move(l);
        }
    } catch (const InvalidInput& e) {
        return fail("input", e.what());
    } catch (const PreconditionError& e) {
        return fail("precondition", e.what());
    } catch (const Error& e) {
        return fail("error", e.what());
    }
    out << io::dump(result, c.pretty) << '\n';
    return code;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace surfcol::cli
