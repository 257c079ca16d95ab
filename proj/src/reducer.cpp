#include "surfcol/reducer.hpp"

#include <algorithm>
#include <sstream>

#include "surfcol/edge_width.hpp"

namespace surfcol {

namespace {

/// Rotation-ordered view of the neighbourhood of one vertex.
struct Star {
    std::vector<int> nbr;    // neighbour indices in rotation order
    std::vector<char> in_e1; // E1 flag of the edge to each
};

Star star_of(const EmbeddedGraph& g, const EdgeClassing& e1, int x) {
    Star s;
    for (int d : g.rotation(x)) {
        s.nbr.push_back(g.head(d));
        s.in_e1.push_back(e1.contains_index(g, EmbeddedGraph::dart_edge(d)));
    }
    return s;
}

struct Census {
    std::vector<int> deg, e1deg;
    std::vector<char> triangular;
};

Census census(const EmbeddedGraph& g, const EdgeClassing& e1) {
    const int n = g.vertex_count();
    Census c{std::vector<int>(n), std::vector<int>(n, 0), std::vector<char>(n, 1)};
    for (int x = 0; x < n; ++x) {
        c.deg[x] = g.degree(x);
        for (int d : g.rotation(x))
            if (e1.contains_index(g, EmbeddedGraph::dart_edge(d))) ++c.e1deg[x];
    }
    for (const Face& f : trace_faces(g)) {
        if (f.length() == 3) continue;
        for (const Corner& corner : f.corners) c.triangular[g.tail(corner.dart)] = 0;
    }
    for (int x = 0; x < n; ++x)
        if (c.deg[x] == 0) c.triangular[x] = 0;
    return c;
}

std::vector<VertexId> ids_of(const EmbeddedGraph& g, const std::vector<int>& idx) {
    std::vector<VertexId> out;
    for (int i : idx) out.push_back(g.vertex_id(i));
    return out;
}

/// Labels n[(start + step*j) mod k] for j = 0..k-1.
std::vector<int> relabel(const std::vector<int>& n, int start, int step) {
    const int k = static_cast<int>(n.size());
    std::vector<int> out(k);
    for (int j = 0; j < k; ++j) out[j] = n[((start + step * j) % k + k) % k];
    return out;
}

Configuration low_e1(const EmbeddedGraph& g, const EdgeClassing& e1, const Census& c, int x) {
    Configuration cfg;
    cfg.kind = c.deg[x] <= 3 ? ConfigKind::DEG3MINUS : ConfigKind::LOW_E1;
    cfg.anchor = g.vertex_id(x);
    Star s = star_of(g, e1, x);
    for (std::size_t i = 0; i < s.nbr.size(); ++i)
        if (s.in_e1[i]) cfg.labels.push_back(g.vertex_id(s.nbr[i]));
    for (std::size_t i = 0; i < cfg.labels.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.labels.size(); ++j) cfg.chords.push_back({cfg.labels[i], cfg.labels[j]});
    return cfg;
}

std::optional<Configuration> saturation(const EmbeddedGraph& g, const EdgeClassing& e1, int x) {
    auto rot = g.rotation(x);
    const int k = static_cast<int>(rot.size());
    for (int i = 0; i < k; ++i) {
        if (k == 2 && i == 1) break; // the two corners of a 2-vertex see the same pair
        const int d1 = rot[i], d2 = rot[(i + 1) % k];
        if (!e1.contains_index(g, EmbeddedGraph::dart_edge(d1)) || !e1.contains_index(g, EmbeddedGraph::dart_edge(d2)))
            continue;
        const int u = g.head(d1), w = g.head(d2);
        if (u == w || g.adjacent(u, w)) continue;
        Configuration cfg;
        cfg.kind = ConfigKind::SATURATION;
        cfg.anchor = g.vertex_id(x);
        cfg.labels = {g.vertex_id(u), g.vertex_id(w)};
        return cfg;
    }
    return std::nullopt;
}

std::optional<Configuration> four_adj_8minus(const EmbeddedGraph& g, const EdgeClassing& e1, const Census& c, int x) {
    if (c.deg[x] != 4 || c.e1deg[x] != 4) return std::nullopt;
    Star s = star_of(g, e1, x);
    int best = -1;
    for (int i = 0; i < 4; ++i)
        if (c.deg[s.nbr[i]] <= 8 && (best < 0 || s.nbr[i] < s.nbr[best])) best = i;
    if (best < 0) return std::nullopt;
    auto l = ids_of(g, relabel(s.nbr, best, 1)); // u, v1, v2, v3
    Configuration cfg;
    cfg.kind = ConfigKind::FOUR_ADJ_8MINUS;
    cfg.anchor = g.vertex_id(x);
    cfg.labels = l;
    cfg.chords = {{l[1], l[3]}};
    cfg.s_sets = {{l[0]}};
    return cfg;
}

std::optional<Configuration> five_e1four(const EmbeddedGraph& g, const EdgeClassing& e1, const Census& c, int x) {
    if (c.deg[x] != 5 || c.e1deg[x] != 4) return std::nullopt;
    Star s = star_of(g, e1, x);
    int best = -1;
    for (int i = 0; i < 5; ++i)
        if (s.in_e1[i] && c.deg[s.nbr[i]] <= 7 && (best < 0 || s.nbr[i] < s.nbr[best])) best = i;
    if (best < 0) return std::nullopt;
    auto order = relabel(s.nbr, best, 1);
    int i = 0;
    for (int j = 1; j < 5; ++j)
        if (!s.in_e1[(best + j) % 5]) i = j;
    if (i >= 3) { // mirror so that the non-E1 neighbour sits at position 1 or 2
        order = relabel(s.nbr, best, -1);
        i = 5 - i;
    }
    auto l = ids_of(g, order); // v0 = u, v1..v4
    Configuration cfg;
    cfg.kind = ConfigKind::FIVE_E1FOUR_7MINUS;
    cfg.anchor = g.vertex_id(x);
    cfg.labels = l;
    cfg.chords = {{l[3 - i], l[4]}, {l[i - 1], l[i + 1]}};
    cfg.s_sets = {{l[0]}};
    cfg.recolour_targets = {l[0]};
    cfg.measure_e1 = true;
    return cfg;
}

std::optional<Configuration> five_adj_6_7(const EmbeddedGraph& g, const EdgeClassing& e1, const Census& c, int x) {
    if (c.deg[x] != 5 || c.e1deg[x] != 5) return std::nullopt;
    Star s = star_of(g, e1, x);
    // Consecutive pairs first (offsets +1 and -1), then the others.
    for (int offset : {1, 4, 2, 3}) {
        for (int i = 0; i < 5; ++i) {
            const int u = s.nbr[i], w = s.nbr[(i + offset) % 5];
            if (c.deg[u] > 7 || c.deg[w] > 6) continue;
            const int step = (offset == 1 || offset == 2) ? 1 : -1;
            auto l = ids_of(g, relabel(s.nbr, i, step));
            Configuration cfg;
            cfg.kind = ConfigKind::FIVE_ADJ_6_7;
            cfg.anchor = g.vertex_id(x);
            if (offset == 1 || offset == 4) {
                cfg.labels = l; // u, w, v1, v2, v3
                cfg.chords = {{l[2], l[4]}, {l[0], l[2]}};
            } else {
                cfg.labels = l; // u, x1, w, x2, x3
                cfg.chords = {{l[1], l[3]}, {l[1], l[4]}};
            }
            const VertexId uid = g.vertex_id(u), wid = g.vertex_id(w);
            cfg.s_sets = {{uid}, {wid}, {uid, wid}};
            cfg.recolour_targets = {wid, uid};
            return cfg;
        }
    }
    return std::nullopt;
}

std::optional<Configuration> triangular_cluster(const EmbeddedGraph& g, const EdgeClassing& e1, const Census& c, int x) {
    if (c.deg[x] != 6 || !c.triangular[x]) return std::nullopt;
    Star s = star_of(g, e1, x);
    for (int y : s.nbr)
        if (c.deg[y] != 6 || !c.triangular[y]) return std::nullopt;
    Configuration cfg;
    cfg.kind = ConfigKind::TRIANGULAR6_CLUSTER;
    cfg.anchor = g.vertex_id(x);
    auto e1_at = [&](int pos) { return static_cast<bool>(s.in_e1[((pos % 6) + 6) % 6]); };
    int start = -1;
    if (e1_at(0) && e1_at(2) && e1_at(4)) start = 0;
    else if (e1_at(1) && e1_at(3) && e1_at(5)) start = 1;
    if (start >= 0) {
        auto l = ids_of(g, relabel(s.nbr, start, 1)); // v1..v6 at l[0..5]
        std::set<VertexId> e1n;
        for (int p = 0; p < 6; ++p)
            if (e1_at(start + p)) e1n.insert(l[p]);
        cfg.labels = l;
        cfg.chords = {{l[0], l[2]}, {l[0], l[4]}, {l[2], l[4]}};
        auto keep = [&](std::vector<VertexId> set) {
            std::vector<VertexId> out;
            for (VertexId y : set)
                if (e1n.count(y)) out.push_back(y);
            if (!out.empty()) cfg.s_sets.push_back(out);
        };
        for (VertexId y : l) keep({y});
        keep({l[3], l[5]});
        keep({l[1], l[5]});
        keep({l[1], l[3]});
        keep({l[3], l[4], l[5]});
        keep({l[5], l[0], l[1]});
        keep({l[1], l[2], l[3]});
        cfg.recolour_targets = {l[1], l[3], l[5]};
        return cfg;
    }
    // Exactly two non-E1 edges: one at an odd and one at an even position.
    for (int i = 0; i < 6; ++i) {
        if (!e1_at(i) || e1_at(i - 1)) continue;
        auto l = ids_of(g, relabel(s.nbr, i, 1));
        const VertexId u = e1_at(i + 2) ? l[2] : l[4];
        cfg.labels = l;
        cfg.chords = {{l[0], l[3]}, {l[1], l[3]}};
        cfg.s_sets = {{u}};
        return cfg;
    }
    return std::nullopt;
}

} // namespace

std::string to_string(ConfigKind k) {
    switch (k) {
    case ConfigKind::NONE: return "NONE";
    case ConfigKind::LOW_E1: return "LOW_E1";
    case ConfigKind::SATURATION: return "SATURATION";
    case ConfigKind::DEG3MINUS: return "DEG3MINUS";
    case ConfigKind::FOUR_ADJ_8MINUS: return "FOUR_ADJ_8MINUS";
    case ConfigKind::FIVE_E1FOUR_7MINUS: return "FIVE_E1FOUR_7MINUS";
    case ConfigKind::FIVE_ADJ_6_7: return "FIVE_ADJ_6_7";
    case ConfigKind::TRIANGULAR6_CLUSTER: return "TRIANGULAR6_CLUSTER";
    }
    return "?";
}

ConfigKind parse_config_kind(const std::string& s) {
    for (ConfigKind k : {ConfigKind::NONE, ConfigKind::LOW_E1, ConfigKind::SATURATION, ConfigKind::DEG3MINUS,
                         ConfigKind::FOUR_ADJ_8MINUS, ConfigKind::FIVE_E1FOUR_7MINUS, ConfigKind::FIVE_ADJ_6_7,
                         ConfigKind::TRIANGULAR6_CLUSTER})
        if (to_string(k) == s) return k;
    throw InvalidInput("unknown configuration kind '" + s + "'");
}

Configuration detect_configuration(const EmbeddedGraph& g, const EdgeClassing& e1) {
    const Census c = census(g, e1);
    const int n = g.vertex_count();
    for (int x = 0; x < n; ++x)
        if (c.deg[x] <= 8 && c.e1deg[x] <= 3) return low_e1(g, e1, c, x);
    for (int x = 0; x < n; ++x)
        if (auto cfg = saturation(g, e1, x)) return *cfg;
    for (int x = 0; x < n; ++x)
        if (auto cfg = four_adj_8minus(g, e1, c, x)) return *cfg;
    for (int x = 0; x < n; ++x)
        if (auto cfg = five_e1four(g, e1, c, x)) return *cfg;
    for (int x = 0; x < n; ++x)
        if (auto cfg = five_adj_6_7(g, e1, c, x)) return *cfg;
    for (int x = 0; x < n; ++x)
        if (auto cfg = triangular_cluster(g, e1, c, x)) return *cfg;
    return {};
}

ReductionStep reduce_once(const EmbeddedGraph& g, const EdgeClassing& e1, const Configuration& cfg) {
    auto stale = [&](const std::string& why) {
        return PreconditionError("configuration " + to_string(cfg.kind) + " at vertex " +
                                 std::to_string(cfg.anchor) + " does not match the graph: " + why);
    };
    if (!cfg.found()) throw stale("no configuration");
    auto xi = g.find_vertex(cfg.anchor);
    if (!xi) throw stale("anchor missing");
    const int x = *xi;
    ReductionStep step;
    step.config = cfg;

    if (cfg.kind == ConfigKind::SATURATION) {
        if (cfg.labels.size() != 2) throw stale("expected labels (u, w)");
        SurgeryResult r = add_cofacial_edge(g, e1, cfg.labels[0], cfg.anchor, cfg.labels[1]);
        step.added = r.added;
        step.child = std::move(r.graph);
        step.child_e1 = std::move(r.e1);
        return step;
    }

    const int deg = g.degree(x);
    bool degree_ok = false;
    switch (cfg.kind) {
    case ConfigKind::LOW_E1: degree_ok = deg <= 8; break;
    case ConfigKind::DEG3MINUS: degree_ok = deg <= 3; break;
    case ConfigKind::FOUR_ADJ_8MINUS: degree_ok = deg == 4; break;
    case ConfigKind::FIVE_E1FOUR_7MINUS:
    case ConfigKind::FIVE_ADJ_6_7: degree_ok = deg == 5; break;
    case ConfigKind::TRIANGULAR6_CLUSTER: degree_ok = deg == 6; break;
    default: break;
    }
    if (!degree_ok) throw stale("anchor degree " + std::to_string(deg));
    const auto nbrs = g.neighbours(x);
    for (VertexId y : cfg.labels) {
        auto yi = g.find_vertex(y);
        if (!yi || std::find(nbrs.begin(), nbrs.end(), *yi) == nbrs.end())
            throw stale("vertex " + std::to_string(y) + " is not a neighbour");
    }

    std::vector<std::pair<VertexId, VertexId>> chords;
    std::set<std::pair<VertexId, VertexId>> seen;
    for (auto [a, b] : cfg.chords) {
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) continue;
        if (g.adjacent(g.vertex_index(a), g.vertex_index(b))) step.skipped.push_back({a, b});
        else chords.push_back({a, b});
    }
    SurgeryResult r = replace_star(g, e1, cfg.anchor, chords);
    step.deleted = cfg.anchor;
    step.added = r.added;
    step.child = std::move(r.graph);
    step.child_e1 = std::move(r.e1);
    return step;
}

namespace {

std::vector<VertexId> e1_neighbour_ids(const EmbeddedGraph& g, const EdgeClassing& e1, int x) {
    std::vector<VertexId> out;
    for (int d : g.rotation(x))
        if (e1.contains_index(g, EmbeddedGraph::dart_edge(d))) out.push_back(g.vertex_id(g.head(d)));
    return out;
}

Colour colour_at(const Colouring& phi, VertexId y) {
    auto it = phi.find(y);
    if (it == phi.end()) throw PreconditionError("colouring misses vertex " + std::to_string(y));
    return it->second;
}

bool hits_every_pair(const std::vector<VertexId>& ne1, const std::vector<VertexId>& s, const Colouring& phi) {
    for (std::size_t i = 0; i < ne1.size(); ++i)
        for (std::size_t j = i + 1; j < ne1.size(); ++j) {
            if (colour_at(phi, ne1[i]) != colour_at(phi, ne1[j])) continue;
            bool hit = std::find(s.begin(), s.end(), ne1[i]) != s.end() ||
                       std::find(s.begin(), s.end(), ne1[j]) != s.end();
            if (!hit) return false;
        }
    return true;
}

const std::vector<Colour>& list_of(const ListAssignment& lists, VertexId v) {
    auto it = lists.find(v);
    if (it == lists.end()) throw PreconditionError("no list for vertex " + std::to_string(v));
    return it->second;
}

} // namespace

std::optional<Colour> extend_at_vertex(const EmbeddedGraph& g, const EdgeClassing& e1, VertexId v,
                                       const Colouring& phi_child, const std::vector<VertexId>& s,
                                       const ListAssignment& lists) {
    const int x = g.vertex_index(v);
    const auto ne1 = e1_neighbour_ids(g, e1, x);
    for (VertexId y : s)
        if (std::find(ne1.begin(), ne1.end(), y) == ne1.end())
            throw PreconditionError("S contains " + std::to_string(y) + ", which is not an E1-neighbour of " +
                                    std::to_string(v));
    if (!hits_every_pair(ne1, s, phi_child))
        throw PreconditionError("S misses a monochromatic pair of E1-neighbours");

    std::set<Colour> forbidden;
    for (int y : g.neighbours(x)) forbidden.insert(colour_at(phi_child, g.vertex_id(y)));
    for (VertexId y : s) {
        const int yi = g.vertex_index(y);
        for (int d : g.rotation(yi)) {
            const int z = g.head(d);
            if (z == x || !e1.contains_index(g, EmbeddedGraph::dart_edge(d))) continue;
            forbidden.insert(colour_at(phi_child, g.vertex_id(z)));
        }
    }
    for (Colour c : list_of(lists, v))
        if (!forbidden.count(c)) return c;
    return std::nullopt;
}

std::optional<Colour> recolour_vertex(const EmbeddedGraph& g, const EdgeClassing& e1, const Colouring& phi,
                                      VertexId v, const std::set<Colour>& forbidden,
                                      const ListAssignment& lists) {
    const int x = g.vertex_index(v);
    if (!forbidden.count(colour_at(phi, v))) throw PreconditionError("forbidden set must contain phi(v)");
    for (int y : g.neighbours(x))
        if (!forbidden.count(colour_at(phi, g.vertex_id(y))))
            throw PreconditionError("forbidden set must contain phi(N(v))");
    const auto ne1 = e1_neighbour_ids(g, e1, x);
    std::set<Colour> seen;
    for (VertexId y : ne1) seen.insert(colour_at(phi, y));
    if (seen.size() != ne1.size()) throw PreconditionError("E1-neighbours of the recoloured vertex are not rainbow");
    for (Colour c : list_of(lists, v))
        if (!forbidden.count(c)) return c;
    return std::nullopt;
}

namespace {

class Extender {
public:
    Extender(const EmbeddedGraph& parent, const EdgeClassing& parent_e1, const ReductionStep& step,
             const ListAssignment& lists)
        : g_(parent), e1_(parent_e1), step_(step), lists_(lists), v_(*step.deleted),
          x_(parent.vertex_index(v_)), ne1_(e1_neighbour_ids(parent, parent_e1, x_)) {
        for (int y : parent.neighbours(x_)) nbrs_.push_back(parent.vertex_id(y));
    }

    /// Extends `phi` (a colouring of the child) to the parent in place.
    bool run(Colouring& phi, ExtensionRecord& rec) {
        if (scripted(phi, rec)) return true;
        if (safety_net(phi, rec)) return true;
        return false;
    }

private:
    int measure(const Colouring& phi) const {
        std::set<Colour> cols;
        for (VertexId y : step_.config.measure_e1 ? ne1_ : nbrs_) cols.insert(phi.at(y));
        return static_cast<int>(cols.size());
    }

    bool try_s(Colouring& phi, ExtensionRecord& rec, const std::vector<VertexId>& s, const char* path) {
        if (!hits_every_pair(ne1_, s, phi)) return false;
        auto c = extend_at_vertex(g_, e1_, v_, phi, s, lists_);
        if (!c) return false;
        finish(phi, rec, *c, path);
        rec.s_used = s;
        return true;
    }

    void finish(Colouring& phi, ExtensionRecord& rec, Colour c, const std::string& path) {
        rec.neighbour_colours.clear();
        for (VertexId y : nbrs_) rec.neighbour_colours.push_back(phi.at(y));
        phi[v_] = c;
        rec.colour = c;
        rec.path = path;
    }

    bool scripted(Colouring& phi, ExtensionRecord& rec) {
        const auto& cfg = step_.config;
        for (;;) {
            if (try_s(phi, rec, {}, "script")) return true;
            for (const auto& s : cfg.s_sets)
                if (try_s(phi, rec, s, "script")) return true;
            bool progressed = false;
            for (VertexId t : cfg.recolour_targets) {
                const int ti = step_.child.vertex_index(t);
                std::set<Colour> forbidden{phi.at(t)};
                for (int y : step_.child.neighbours(ti)) forbidden.insert(phi.at(step_.child.vertex_id(y)));
                for (VertexId y : nbrs_) forbidden.insert(phi.at(y));
                std::optional<Colour> c;
                try {
                    c = recolour_vertex(step_.child, step_.child_e1, phi, t, forbidden, lists_);
                } catch (const PreconditionError&) {
                    continue; // E1-neighbourhood not rainbow: recolouring is not allowed
                }
                if (!c) continue;
                Colouring next = phi;
                next[t] = *c;
                if (measure(next) <= measure(phi)) continue;
                phi = std::move(next);
                rec.recoloured.push_back({t, *c});
                progressed = true;
                break;
            }
            if (!progressed) return false;
        }
    }

    /// Colours v directly, checking for bicoloured E1-cycles through v.
    bool direct(Colouring& phi, ExtensionRecord& rec, const std::string& path) {
        std::set<Colour> around;
        for (VertexId y : nbrs_) around.insert(phi.at(y));
        std::vector<Colour> dense(g_.vertex_count(), -1);
        // Remap colours to dense non-negative codes for the cycle check.
        std::map<Colour, Colour> code;
        auto encode = [&](Colour c) { return code.emplace(c, static_cast<Colour>(code.size())).first->second; };
        for (int i = 0; i < g_.vertex_count(); ++i)
            if (i != x_) dense[i] = encode(phi.at(g_.vertex_id(i)));
        if (!adj_) adj_.emplace(g_, e1_);
        for (Colour c : list_of(lists_, v_)) {
            if (around.count(c)) continue;
            dense[x_] = encode(c);
            if (detail::closes_bicoloured_cycle(*adj_, dense, x_)) continue;
            finish(phi, rec, c, path);
            return true;
        }
        return false;
    }

    bool child_valid_at(const Colouring& phi, VertexId t) {
        const EmbeddedGraph& ch = step_.child;
        std::vector<Colour> dense(ch.vertex_count());
        std::map<Colour, Colour> code;
        for (int i = 0; i < ch.vertex_count(); ++i)
            dense[i] = code.emplace(phi.at(ch.vertex_id(i)), static_cast<Colour>(code.size())).first->second;
        const int ti = ch.vertex_index(t);
        for (int y : ch.neighbours(ti))
            if (dense[y] == dense[ti]) return false;
        if (!child_adj_) child_adj_.emplace(ch, step_.child_e1);
        return !detail::closes_bicoloured_cycle(*child_adj_, dense, ti);
    }

    bool safety_net(Colouring& phi, ExtensionRecord& rec) {
        // Every hitting subset of N_E1(v), smallest first.
        const int k = static_cast<int>(ne1_.size());
        std::vector<std::vector<VertexId>> subsets;
        for (int mask = 0; mask < (1 << k); ++mask) {
            std::vector<VertexId> s;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) s.push_back(ne1_[i]);
            subsets.push_back(std::move(s));
        }
        std::stable_sort(subsets.begin(), subsets.end(),
                         [](const auto& a, const auto& b) { return a.size() < b.size(); });
        for (const auto& s : subsets)
            if (try_s(phi, rec, s, "safety-net")) return true;
        if (direct(phi, rec, "safety-net")) return true;

        // Recolour one or two neighbours of v in the child, then colour v.
        const Colouring base = phi;
        for (std::size_t i = 0; i < nbrs_.size(); ++i) {
            const VertexId a = nbrs_[i];
            for (Colour ca : list_of(lists_, a)) {
                if (ca == base.at(a)) continue;
                Colouring one = base;
                one[a] = ca;
                if (!child_valid_at(one, a)) continue;
                if (direct(one, rec, "safety-net-recolour")) {
                    phi = std::move(one);
                    rec.recoloured.push_back({a, ca});
                    return true;
                }
                for (std::size_t j = i + 1; j < nbrs_.size(); ++j) {
                    const VertexId b = nbrs_[j];
                    for (Colour cb : list_of(lists_, b)) {
                        if (cb == one.at(b)) continue;
                        Colouring two = one;
                        two[b] = cb;
                        if (!child_valid_at(two, b)) continue;
                        if (direct(two, rec, "safety-net-recolour")) {
                            phi = std::move(two);
                            rec.recoloured.push_back({a, ca});
                            rec.recoloured.push_back({b, cb});
                            return true;
                        }
                    }
                }
            }
        }
        return false;
    }

    const EmbeddedGraph& g_;
    const EdgeClassing& e1_;
    const ReductionStep& step_;
    const ListAssignment& lists_;
    VertexId v_;
    int x_;
    std::vector<VertexId> ne1_;
    std::vector<VertexId> nbrs_;
    std::optional<detail::E1Adjacency> adj_, child_adj_;
};

std::string describe(const ReductionTrace& trace, std::size_t failed_at) {
    std::ostringstream out;
    out << "extension failed at reduction step " << failed_at << "; trace:";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        out << "\n  [" << i << "] " << to_string(s.kind) << " anchor=" << s.anchor << " added=" << s.added.size();
        if (i == failed_at) out << "  <-- failed";
    }
    return out.str();
}

void check_edge_width(const EmbeddedGraph& g, const EdgeClassing& e1, const Rational& epsilon) {
    const int genus = euler_genus(g);
    const Rational rho = Rational(12 * (genus - 2)) / epsilon;
    if (rho <= 0) return;
    // Need every non-contractible cycle to weigh at least rho.
    boost::multiprecision::cpp_int ceil_rho = numerator(rho) / denominator(rho);
    if (Rational(ceil_rho) < rho) ceil_rho += 1;
    const int budget = static_cast<int>(ceil_rho) - 1;
    auto r = weighted_edge_width_oracle(g, e1, 2, budget);
    if (r.status == WidthStatus::finite)
        throw PreconditionError("ew_2 = " + std::to_string(r.width) + " is below the required " +
                                format_rational(rho));
}

} // namespace

ReductionFailure::ReductionFailure(const std::string& what, ReductionTrace t) : Error(what), trace(std::move(t)) {}

Colouring solve_by_reduction(const EmbeddedGraph& g, const EdgeClassing& e1_in, const ListAssignment& lists_in,
                             const SolveOptions& options, ReductionTrace* trace_out) {
    if (!g.is_simple()) throw PreconditionError("solve_by_reduction requires a simple graph");
    if (options.epsilon <= 0 || options.epsilon > Rational(1, 43))
        throw PreconditionError("epsilon must lie in (0, 1/43]");
    const ListAssignment lists = normalize_lists(g, lists_in);
    const EdgeClassing e1 = e1_in.restricted_to(g);
    if (!options.waive_ew_check) check_edge_width(g, e1, options.epsilon);

    ReductionTrace trace;
    std::vector<EmbeddedGraph> graphs{g};
    std::vector<EdgeClassing> classes{e1};
    std::vector<ReductionStep> steps;

    Colouring phi;
    for (;;) {
        const EmbeddedGraph& cur = graphs.back();
        if (cur.vertex_count() <= kListSize) {
            phi = rainbow_base(cur, lists);
            trace.base_cases.push_back(cur.vertex_count() == 0 ? "empty" : "rainbow");
            break;
        }
        Configuration cfg = detect_configuration(cur, classes.back());
        if (!cfg.found()) {
            auto exact = exact_solve(cur, classes.back(), lists);
            if (!exact) {
                trace.base_cases.push_back("exact-infeasible");
                throw ReductionFailure("configuration-free subgraph admits no colouring", trace);
            }
            phi = std::move(*exact);
            trace.base_cases.push_back("exact");
            break;
        }
        ReductionStep step = reduce_once(cur, classes.back(), cfg);
        ExtensionRecord rec;
        rec.kind = cfg.kind;
        rec.anchor = cfg.anchor;
        rec.deleted = step.deleted;
        rec.added = step.added;
        trace.steps.push_back(rec);
        graphs.push_back(step.child);
        classes.push_back(step.child_e1);
        steps.push_back(std::move(step));
    }

    for (std::size_t i = steps.size(); i-- > 0;) {
        const ReductionStep& step = steps[i];
        if (!step.deleted) continue; // edge addition: the child colouring already fits
        Extender ext(graphs[i], classes[i], step, lists);
        if (!ext.run(phi, trace.steps[i])) throw ReductionFailure(describe(trace, i), trace);
    }
    if (trace_out) *trace_out = std::move(trace);
    return phi;
}

} // namespace surfcol
