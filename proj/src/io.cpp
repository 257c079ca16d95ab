#include "surfcol/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace surfcol::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidInput(what); }

int as_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) bad(what + ": expected an integer");
    const auto x = j.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) bad(what + ": out of range");
    return static_cast<int>(x);
}

int key_to_int(const std::string& key) {
    int x = 0;
    const char* end = key.data() + key.size();
    auto [p, ec] = std::from_chars(key.data(), end, x);
    if (key.empty() || ec != std::errc() || p != end) bad("vertex key '" + key + "' is not an integer");
    return x;
}

const Json& field(const Json& obj, const char* name) {
    auto it = obj.find(name);
    if (it == obj.end()) bad(std::string("missing field '") + name + "'");
    return *it;
}

} // namespace

Json graph_to_json(const EmbeddedGraph& g, const EdgeClassing& e1) {
    Json j;
    j["vertices"] = g.vertex_ids();
    Json edges = Json::array();
    for (const EdgeSpec& e : g.edge_specs())
        edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"sign", e.sign}, {"e1", e1.contains(e.id)}});
    j["edges"] = std::move(edges);
    Json rot = Json::object();
    for (const auto& [v, darts] : g.rotation_spec()) {
        Json seq = Json::array();
        for (const DartSpec& d : darts) seq.push_back({d.edge, d.end});
        rot[std::to_string(v)] = std::move(seq);
    }
    j["rotation"] = std::move(rot);
    return j;
}

GraphFile graph_from_json(const Json& j) {
    if (!j.is_object()) bad("graph: expected an object");
    const Json& jv = field(j, "vertices");
    const Json& je = field(j, "edges");
    const Json& jr = field(j, "rotation");
    if (!jv.is_array() || !je.is_array() || !jr.is_object()) bad("graph: malformed top-level fields");

    std::vector<VertexId> vertices;
    for (const Json& x : jv) vertices.push_back(as_int(x, "vertex id"));
    std::vector<EdgeSpec> edges;
    std::vector<EdgeId> e1;
    for (const Json& x : je) {
        if (!x.is_object()) bad("edge: expected an object");
        EdgeSpec e{as_int(field(x, "id"), "edge id"), as_int(field(x, "u"), "edge u"), as_int(field(x, "v"), "edge v"), 1};
        if (auto s = x.find("sign"); s != x.end()) e.sign = as_int(*s, "edge sign");
        bool in_e1 = true;
        if (auto f = x.find("e1"); f != x.end()) {
            if (!f->is_boolean()) bad("edge e1: expected a boolean");
            in_e1 = f->get<bool>();
        }
        if (in_e1) e1.push_back(e.id);
        edges.push_back(e);
    }
    RotationSpec rotation;
    for (const auto& [key, seq] : jr.items()) {
        if (!seq.is_array()) bad("rotation: expected an array per vertex");
        auto& out = rotation[key_to_int(key)];
        for (const Json& d : seq) {
            if (!d.is_array() || d.size() != 2) bad("rotation: expected [edge id, end] pairs");
            out.push_back({as_int(d[0], "rotation edge"), as_int(d[1], "rotation end")});
        }
    }
    GraphFile f{EmbeddedGraph::build(std::move(vertices), std::move(edges), rotation), EdgeClassing(std::move(e1))};
    return f;
}

Json lists_to_json(const ListAssignment& lists) {
    Json j = Json::object();
    for (const auto& [v, l] : lists) j[std::to_string(v)] = l;
    return j;
}

ListAssignment lists_from_json(const Json& j) {
    if (!j.is_object()) bad("lists: expected an object");
    ListAssignment out;
    for (const auto& [key, l] : j.items()) {
        if (!l.is_array()) bad("lists: expected an array of colours");
        auto& dst = out[key_to_int(key)];
        for (const Json& c : l) dst.push_back(as_int(c, "colour"));
    }
    return out;
}

Json colouring_to_json(const Colouring& phi) {
    Json j = Json::object();
    for (const auto& [v, c] : phi) j[std::to_string(v)] = c;
    return j;
}

Colouring colouring_from_json(const Json& j) {
    if (!j.is_object()) bad("colouring: expected an object");
    Colouring out;
    for (const auto& [key, c] : j.items()) out[key_to_int(key)] = as_int(c, "colour");
    return out;
}

Json cycle_to_json(const EmbeddedGraph& g, const CycleInEmbedding& c) {
    Json vs = Json::array(), es = Json::array();
    for (int v : c.vertices) vs.push_back(g.vertex_id(v));
    for (int e : c.edges) es.push_back(g.edge_id(e));
    return {{"vertices", vs}, {"edges", es}};
}

Json width_to_json(const EmbeddedGraph& g, const WeightedWidthResult& r) {
    Json j;
    j["status"] = to_string(r.status);
    j["width"] = r.infinite() ? Json(nullptr) : Json(r.width);
    j["witness"] = r.witness ? cycle_to_json(g, *r.witness)["edges"] : Json(nullptr);
    if (r.witness) j["witness_vertices"] = cycle_to_json(g, *r.witness)["vertices"];
    return j;
}

Json configuration_to_json(const Configuration& c) {
    Json j;
    j["kind"] = to_string(c.kind);
    if (!c.found()) return j;
    j["anchor"] = c.anchor;
    j["labels"] = c.labels;
    Json chords = Json::array();
    for (auto [a, b] : c.chords) chords.push_back({a, b});
    j["chords"] = chords;
    j["s_sets"] = c.s_sets;
    j["recolour_targets"] = c.recolour_targets;
    j["measure"] = c.measure_e1 ? "e1_neighbourhood" : "neighbourhood";
    return j;
}

Json trace_to_json(const ReductionTrace& t) {
    Json steps = Json::array();
    for (const ExtensionRecord& r : t.steps) {
        Json s;
        s["kind"] = to_string(r.kind);
        s["anchor"] = r.anchor;
        s["deleted"] = r.deleted ? Json(*r.deleted) : Json(nullptr);
        s["added_edges"] = r.added;
        s["colour"] = r.deleted ? Json(r.colour) : Json(nullptr);
        s["s_used"] = r.s_used;
        Json rec = Json::array();
        for (auto [v, c] : r.recoloured) rec.push_back({v, c});
        s["recoloured"] = rec;
        s["path"] = r.path;
        s["neighbour_colours"] = r.neighbour_colours;
        steps.push_back(std::move(s));
    }
    return {{"steps", steps}, {"base_cases", t.base_cases}};
}

Json discharge_to_json(const EmbeddedGraph& g, const DischargeReport& r, const ChargeLedger* log) {
    Json j;
    Json totals = Json::array();
    for (const Rational& x : r.totals) totals.push_back(format_rational(x));
    j["totals"] = totals;
    j["expected_total"] = format_rational(r.expected_total);
    j["conserved"] = r.conserved;
    j["initial_total_matches"] = r.initial_total_matches;
    j["configuration"] = to_string(r.config);
    Json dv = Json::array();
    for (const auto& [v, c] : r.deficient_vertices) dv.push_back({{"vertex", v}, {"charge", format_rational(c)}});
    j["deficient_vertices"] = dv;
    Json nf = Json::array();
    for (const auto& [f, c] : r.negative_faces) nf.push_back({{"face", f}, {"charge", format_rational(c)}});
    j["negative_faces"] = nf;
    j["charges_consistent"] = r.charges_consistent;
    j["redirection_checks"] = r.redirection_checks;
    j["redirection_violations"] = r.redirection_violations;
    j["budget_violations"] = r.budget_violations;
    if (log) {
        Json ts = Json::array();
        for (const Transfer& t : log->log) {
            Json x;
            x["rule"] = to_string(t.rule);
            if (t.from_face) x["face"] = t.source;
            else x["from"] = g.vertex_id(t.source);
            x["to"] = g.vertex_id(t.sink);
            x["amount"] = format_rational(t.amount);
            if (t.redirected) x["redirected_from"] = g.vertex_id(t.via);
            ts.push_back(std::move(x));
        }
        j["transfers"] = ts;
    }
    return j;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        bad(path.string() + ": " + e.what());
    }
}

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

void write_json_file(const std::filesystem::path& path, const Json& j, bool pretty) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << dump(j, pretty) << '\n';
}

} // namespace surfcol::io
