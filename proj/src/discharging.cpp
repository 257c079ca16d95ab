#include "surfcol/discharging.hpp"

#include <map>
#include <set>

namespace surfcol {

namespace {

void check_epsilon(const Rational& eps) {
    if (eps <= 0 || eps > Rational(1, 43)) throw PreconditionError("epsilon must lie in (0, 1/43]");
}

void check_matches(const EmbeddedGraph& g, const ChargeLedger& l, const std::vector<Face>& faces) {
    bool ok = l.stages >= 1 && static_cast<int>(l.vertex[0].size()) == g.vertex_count() &&
              l.face_lengths.size() == faces.size();
    for (std::size_t i = 0; ok && i < faces.size(); ++i) ok = l.face_lengths[i] == faces[i].length();
    if (!ok) throw PreconditionError("charge ledger does not belong to this graph");
}

/// Per vertex: is every incident face a triangle?
std::vector<char> triangular_vertices(const EmbeddedGraph& g, const std::vector<Face>& faces) {
    std::vector<char> tri(g.vertex_count(), 1);
    for (int x = 0; x < g.vertex_count(); ++x)
        if (g.degree(x) == 0) tri[x] = 0;
    for (const Face& f : faces)
        if (f.length() != 3)
            for (const Corner& c : f.corners) tri[g.tail(c.dart)] = 0;
    return tri;
}

} // namespace

std::string to_string(Rule r) {
    switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    }
    return "?";
}

Rational ChargeLedger::total(int stage) const {
    Rational t = 0;
    for (const auto& x : vertex[stage]) t += x;
    for (const auto& x : face[stage]) t += x;
    return t;
}

ChargeLedger initial_charges(const EmbeddedGraph& g) {
    ChargeLedger l;
    l.stages = 1;
    for (int x = 0; x < g.vertex_count(); ++x) l.vertex[0].push_back(Rational(g.degree(x) - 6));
    for (const Face& f : trace_faces(g)) {
        l.face[0].push_back(Rational(2 * (f.length() - 3)));
        l.face_lengths.push_back(f.length());
    }
    return l;
}

ChargeLedger apply_rules(const EmbeddedGraph& g, const ChargeLedger& in, const Rational& eps) {
    check_epsilon(eps);
    const auto faces = trace_faces(g);
    check_matches(g, in, faces);
    const int n = g.vertex_count();
    ChargeLedger l;
    l.stages = 1;
    l.vertex[0] = in.vertex[0];
    l.face[0] = in.face[0];
    l.face_lengths = in.face_lengths;
    auto deg = [&](int x) { return g.degree(x); };

    // R1: every 4+-face splits ch0(f) evenly among its distinct incident 6--vertices.
    l.vertex[1] = l.vertex[0];
    l.face[1] = l.face[0];
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        if (faces[fi].length() < 4) continue;
        std::set<int> takers;
        for (const Corner& c : faces[fi].corners)
            if (deg(g.tail(c.dart)) <= 6) takers.insert(g.tail(c.dart));
        if (takers.empty()) continue;
        const Rational share = l.face[0][fi] / static_cast<int>(takers.size());
        for (int x : takers) {
            l.vertex[1][x] += share;
            l.log.push_back({Rule::R1, true, static_cast<int>(fi), x, share});
        }
        l.face[1][fi] = 0;
    }

    // R2: every 7+-vertex sends (ch0 - eps)/deg along each dart; shares aimed
    // at 7+-vertices are halved and redirected to the nearest 6--vertex on
    // each side in the sender's rotation (kept by the sender if none).
    l.vertex[2] = l.vertex[1];
    l.face[2] = l.face[1];
    for (int x = 0; x < n; ++x) {
        const int k = deg(x);
        if (k < 7) continue;
        const Rational a = (l.vertex[0][x] - eps) / k;
        auto rot = g.rotation(x);
        for (int i = 0; i < k; ++i) {
            const int y = g.head(rot[i]);
            if (deg(y) <= 6) {
                l.vertex[2][x] -= a;
                l.vertex[2][y] += a;
                l.log.push_back({Rule::R2, false, x, y, a});
                continue;
            }
            for (int dir : {1, -1}) {
                for (int step = 1; step < k; ++step) {
                    const int z = g.head(rot[((i + dir * step) % k + k) % k]);
                    if (deg(z) > 6) continue;
                    const Rational half = a / 2;
                    l.vertex[2][x] -= half;
                    l.vertex[2][z] += half;
                    l.log.push_back({Rule::R2, false, x, z, half, true, y});
                    break;
                }
            }
        }
    }

    // R3: a 6-vertex incident with a 4+-face or adjacent to a 7+-vertex splits
    // ch2 - eps evenly among neighbouring triangular 6-vertices that have no
    // 7+-neighbour.
    const auto tri = triangular_vertices(g, faces);
    std::vector<char> near_big(n, 0);
    for (int x = 0; x < n; ++x)
        for (int y : g.neighbours(x))
            if (deg(y) >= 7) near_big[x] = 1;
    l.vertex[3] = l.vertex[2];
    l.face[3] = l.face[2];
    for (int x = 0; x < n; ++x) {
        if (deg(x) != 6 || (tri[x] && !near_big[x])) continue;
        std::set<int> takers;
        for (int y : g.neighbours(x))
            if (y != x && deg(y) == 6 && tri[y] && !near_big[y]) takers.insert(y);
        if (takers.empty()) continue;
        const Rational share = (l.vertex[2][x] - eps) / static_cast<int>(takers.size());
        for (int y : takers) {
            l.vertex[3][x] -= share;
            l.vertex[3][y] += share;
            l.log.push_back({Rule::R3, false, x, y, share});
        }
    }
    l.stages = 4;
    return l;
}

DischargeReport verify_final(const EmbeddedGraph& g, const ChargeLedger& l, const Rational& eps,
                             ConfigKind cfg_status) {
    check_epsilon(eps);
    const auto faces = trace_faces(g);
    check_matches(g, l, faces);
    if (l.stages != 4) throw PreconditionError("charge ledger has not been through R1-R3");

    DischargeReport r;
    r.config = cfg_status;
    for (int s = 0; s < 4; ++s) r.totals[s] = l.total(s);
    for (int s = 1; s < 4; ++s) r.conserved = r.conserved && r.totals[s] == r.totals[0];
    r.expected_total = Rational(6 * (g.edge_count() - g.vertex_count() - static_cast<int>(faces.size())));
    r.initial_total_matches = r.totals[0] == r.expected_total;

    for (int x = 0; x < g.vertex_count(); ++x)
        if (l.vertex[3][x] < eps) r.deficient_vertices.push_back({g.vertex_id(x), l.vertex[3][x]});
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (l.face[3][f] < 0) r.negative_faces.push_back({static_cast<int>(f), l.face[3][f]});
    r.charges_consistent = cfg_status != ConfigKind::NONE ||
                         (r.deficient_vertices.empty() && r.negative_faces.empty());

    // R2 budget per sender.
    std::map<int, Rational> sent;
    for (const Transfer& t : l.log)
        if (t.rule == Rule::R2) sent[t.source] += t.amount;
    for (const auto& [x, total] : sent)
        if (total > l.vertex[0][x] - eps)
            r.budget_violations.push_back("vertex " + std::to_string(g.vertex_id(x)) + " sent " +
                                          format_rational(total));

    // Redirection check: for consecutive 7+-neighbours u, w of a vertex v
    // whose corner at v lies on a triangle, u sends v at least half of its
    // direct share redirected from w (and symmetrically).
    std::map<std::pair<int, int>, int> corner_len; // (dart, dart) at a corner -> shortest face length
    for (const Face& f : faces)
        for (const Corner& c : f.corners) {
            const int a = c.dart, b = entry_dart(g, c);
            auto key = std::minmax(a, b);
            auto [it, fresh] = corner_len.emplace(key, f.length());
            if (!fresh) it->second = std::min(it->second, f.length());
        }
    std::map<std::pair<int, int>, Rational> direct;                 // (sender, sink)
    std::map<std::tuple<int, int, int>, Rational> redirected;      // (sender, sink, via)
    for (const Transfer& t : l.log) {
        if (t.rule != Rule::R2) continue;
        if (t.redirected) redirected[{t.source, t.sink, t.via}] += t.amount;
        else direct[{t.source, t.sink}] += t.amount;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto rot = g.rotation(v);
        const int k = static_cast<int>(rot.size());
        if (k < 2) continue;
        for (int i = 0; i < k; ++i) {
            if (k == 2 && i == 1) break;
            const int du = rot[i], dw = rot[(i + 1) % k];
            const int u = g.head(du), w = g.head(dw);
            if (u == w || g.degree(u) < 7 || g.degree(w) < 7) continue;
            auto it = corner_len.find(std::minmax(du, dw));
            if (it == corner_len.end() || it->second != 3) continue;
            for (auto [s, o] : {std::pair{u, w}, std::pair{w, u}}) {
                auto d = direct.find({s, v});
                if (d == direct.end() || d->second <= 0) continue;
                ++r.redirection_checks;
                Rational got = 0;
                if (auto rd = redirected.find({s, v, o}); rd != redirected.end()) got = rd->second;
                if (got * 2 < d->second)
                    r.redirection_violations.push_back(
                        "vertex " + std::to_string(g.vertex_id(v)) + " received " + format_rational(got) + " from " +
                        std::to_string(g.vertex_id(s)) + " redirected from " + std::to_string(g.vertex_id(o)));
            }
        }
    }
    return r;
}

Rational required_rho(int genus, const Rational& epsilon) {
    if (epsilon <= 0) throw PreconditionError("epsilon must be positive");
    return Rational(12 * (genus - 2)) / epsilon;
}

} // namespace surfcol
