#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "surfcol/cli.hpp"
#include "surfcol/discharging.hpp"
#include "surfcol/edge_width.hpp"
#include "surfcol/generators.hpp"
#include "surfcol/io.hpp"
#include "surfcol/reducer.hpp"

namespace py = pybind11;
using namespace surfcol;
using io::Json;

namespace {

io::GraphFile parse_graph(const std::string& text) {
    try {
        return io::graph_from_json(Json::parse(text));
    } catch (const Json::exception& e) {
        throw InvalidInput(e.what());
    }
}

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw InvalidInput(e.what());
    }
}

std::string edge_width(const std::string& graph, int t, std::optional<int> budget, bool fast) {
    auto f = parse_graph(graph);
    const auto r = fast ? weighted_edge_width_fast(f.graph, f.e1, t)
                        : weighted_edge_width_oracle(f.graph, f.e1, t, budget);
    return io::width_to_json(f.graph, r).dump();
}

std::string solve(const std::string& graph, const std::string& lists, bool exact, const std::string& epsilon,
                  bool waive_ew_check) {
    auto f = parse_graph(graph);
    const auto l = io::lists_from_json(parse(lists));
    Json out;
    if (exact) {
        py::gil_scoped_release release;
        auto phi = exact_solve(f.graph, f.e1, l);
        out["status"] = phi ? "ok" : "infeasible";
        if (phi) out["colouring"] = io::colouring_to_json(*phi);
        return out.dump();
    }
    SolveOptions opt;
    opt.epsilon = parse_rational(epsilon);
    opt.waive_ew_check = waive_ew_check;
    ReductionTrace trace;
    Colouring phi;
    {
        py::gil_scoped_release release;
        phi = solve_by_reduction(f.graph, f.e1, l, opt, &trace);
    }
    out["status"] = "ok";
    out["colouring"] = io::colouring_to_json(phi);
    out["trace"] = io::trace_to_json(trace);
    return out.dump();
}

std::string check(const std::string& graph, const std::string& colouring, std::optional<std::string> lists) {
    auto f = parse_graph(graph);
    std::optional<ListAssignment> l;
    if (lists) l = io::lists_from_json(parse(*lists));
    return cli::check_report(f.graph, f.e1, io::colouring_from_json(parse(colouring)), l).dump();
}

std::string discharge(const std::string& graph, const std::string& epsilon, bool log_transfers) {
    auto f = parse_graph(graph);
    const Rational eps = parse_rational(epsilon);
    const auto ledger = apply_rules(f.graph, initial_charges(f.graph), eps);
    const auto cfg = detect_configuration(f.graph, f.e1).kind;
    return io::discharge_to_json(f.graph, verify_final(f.graph, ledger, eps, cfg), log_transfers ? &ledger : nullptr)
        .dump();
}

std::string find_config(const std::string& graph) {
    auto f = parse_graph(graph);
    return io::configuration_to_json(detect_configuration(f.graph, f.e1)).dump();
}

std::string generate_instance(const std::string& family, int m, int n, std::uint64_t seed, const std::string& e1,
                              double e1_p, std::uint64_t e1_seed, int palette, int k, std::uint64_t list_seed) {
    GeneratorSpec spec;
    spec.family = parse_family(family);
    spec.m = m;
    spec.n = n;
    spec.seed = seed;
    if (e1 == "all") spec.e1 = E1Policy::all;
    else if (e1 == "none") spec.e1 = E1Policy::none;
    else if (e1 == "random") spec.e1 = E1Policy::random;
    else throw InvalidInput("unknown E1 policy '" + e1 + "'");
    spec.e1_probability = e1_p;
    spec.e1_seed = e1_seed;
    spec.palette = palette;
    spec.k = k;
    spec.list_seed = list_seed;
    const auto inst = generate(spec);
    return Json{{"graph", io::graph_to_json(inst.graph, inst.e1)}, {"lists", io::lists_to_json(inst.lists)}}.dump();
}

std::string genus(const std::string& graph) {
    auto f = parse_graph(graph);
    return Json{{"euler_genus", euler_genus(f.graph)}, {"orientable", is_orientable(f.graph)},
                {"faces", trace_faces(f.graph).size()}}
        .dump();
}

std::pair<int, std::string> run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str() + err.str()};
}

} // namespace

PYBIND11_MODULE(_surfcol, m) {
    m.doc() = "Native core; use the surfcol package for the dict-based API.";

    // Translators run newest first, so derived types are registered last.
    auto& base = py::register_exception<Error>(m, "SurfcolError");
    py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<ReductionFailure>(m, "ReductionFailure", base.ptr());

    m.def("edge_width", &edge_width, py::arg("graph"), py::arg("t") = 2, py::arg("budget") = py::none(),
          py::arg("fast") = false);
    m.def("solve", &solve, py::arg("graph"), py::arg("lists"), py::arg("exact") = false,
          py::arg("epsilon") = std::string(kDefaultEpsilon), py::arg("waive_ew_check") = true);
    m.def("check", &check, py::arg("graph"), py::arg("colouring"), py::arg("lists") = py::none());
    m.def("discharge", &discharge, py::arg("graph"), py::arg("epsilon") = std::string(kDefaultEpsilon),
          py::arg("log_transfers") = false);
    m.def("find_config", &find_config, py::arg("graph"));
    m.def("generate", &generate_instance, py::arg("family"), py::arg("m") = 3, py::arg("n") = 3,
          py::arg("seed") = 0, py::arg("e1") = "all", py::arg("e1_p") = 0.5, py::arg("e1_seed") = 0,
          py::arg("palette") = 30, py::arg("k") = kListSize, py::arg("list_seed") = 0);
    m.def("genus", &genus, py::arg("graph"));
    m.def("rho", [](int g, const std::string& eps) { return format_rational(required_rho(g, parse_rational(eps))); },
          py::arg("genus"), py::arg("epsilon") = std::string(kDefaultEpsilon));
    m.def("run_cli", &run_cli, py::arg("args"), "In-process CLI: returns (exit code, output).");
}
