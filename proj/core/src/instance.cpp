#include "sdcomp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sdcomp {

namespace {
constexpr double kDegenerateTol = 1e-12;
}

const char* kind_name(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::eq: return "eq";
        case ConstraintKind::ge: return "ge";
        case ConstraintKind::le: return "le";
    }
    return "?";
}

ConstraintKind kind_from_name(const std::string& s) {
    if (s == "eq") return ConstraintKind::eq;
    if (s == "ge") return ConstraintKind::ge;
    if (s == "le") return ConstraintKind::le;
    throw ParseError("unknown constraint kind: " + s);
}

SignedCompletionInstance::SignedCompletionInstance(int n, std::vector<EdgeConstraint> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw InvalidInput("instance: negative vertex count");
    std::set<std::tuple<int, int, int>> seen;
    for (auto& e : edges_) {
        if (e.u == e.v) throw ParseError("instance: self-loop constraint");
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw ParseError("instance: vertex out of range");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!std::isfinite(e.c)) throw ParseError("instance: non-finite weight");
        if (std::fabs(e.c) > 1.0) throw WeightOutOfRange("instance: |c| > 1");
        if (!seen.insert({e.u, e.v, static_cast<int>(e.kind)}).second)
            throw ParseError("instance: duplicate constraint on the same pair and kind");
    }
}

SignedGraph SignedCompletionInstance::signed_graph() const {
    SignedGraph sg(n_);
    for (const auto& e : edges_) {
        if (e.kind == ConstraintKind::ge || e.kind == ConstraintKind::eq)
            sg.add_edge(e.u, e.v, EdgeSign::even);
        if (e.kind == ConstraintKind::le || e.kind == ConstraintKind::eq)
            sg.add_edge(e.u, e.v, EdgeSign::odd);
    }
    return sg;
}

Graph SignedCompletionInstance::underlying() const {
    Graph g(n_);
    for (const auto& e : edges_)
        if (!g.has_edge(e.u, e.v)) g.add_edge(e.u, e.v);
    return g;
}

std::optional<int> SignedCompletionInstance::edge_index(int u, int v, ConstraintKind kind) const {
    if (u > v) std::swap(u, v);
    for (size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].u == u && edges_[i].v == v && edges_[i].kind == kind)
            return static_cast<int>(i);
    return std::nullopt;
}

double SignedCompletionInstance::max_violation(const SymMatrix& x) const {
    if (x.size() != n_) throw InvalidInput("max_violation: size mismatch");
    double worst = 0.0;
    for (int i = 0; i < n_; ++i) worst = std::max(worst, std::fabs(x(i, i) - 1.0));
    for (const auto& e : edges_) {
        double v = x(e.u, e.v);
        switch (e.kind) {
            case ConstraintKind::eq: worst = std::max(worst, std::fabs(v - e.c)); break;
            case ConstraintKind::ge: worst = std::max(worst, std::max(0.0, e.c - v)); break;
            case ConstraintKind::le: worst = std::max(worst, std::max(0.0, v - e.c)); break;
        }
    }
    return worst;
}

namespace {

void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                  const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ParseError(std::string("unknown key '") + it.key() + "' in " + where);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

SignedCompletionInstance parse_instance(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance JSON: top level must be an object");
    require_keys(j, {"n", "edges"}, "instance");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("instance JSON: missing integer 'n'");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ParseError("instance JSON: missing array 'edges'");
    int n = j["n"].get<int>();
    std::vector<EdgeConstraint> edges;
    for (const auto& ej : j["edges"]) {
        if (!ej.is_object()) throw ParseError("instance JSON: edge must be an object");
        require_keys(ej, {"u", "v", "kind", "c"}, "edge");
        for (const char* k : {"u", "v", "kind", "c"})
            if (!ej.contains(k)) throw ParseError(std::string("instance JSON: edge missing ") + k);
        EdgeConstraint e;
        e.u = ej["u"].get<int>();
        e.v = ej["v"].get<int>();
        e.kind = kind_from_name(ej["kind"].get<std::string>());
        e.c = ej["c"].get<double>();
        edges.push_back(e);
    }
    return SignedCompletionInstance(n, std::move(edges));
}

SignedCompletionInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

std::string instance_to_json(const SignedCompletionInstance& inst) {
    std::string out = "{\"n\": " + std::to_string(inst.vertex_count()) + ", \"edges\": [";
    bool first = true;
    for (const auto& e : inst.edges()) {
        if (!first) out += ", ";
        first = false;
        out += "{\"u\": " + std::to_string(e.u) + ", \"v\": " + std::to_string(e.v) +
               ", \"kind\": \"" + kind_name(e.kind) + "\", \"c\": " + format_double(e.c) + "}";
    }
    out += "]}\n";
    return out;
}

void save_instance(const SignedCompletionInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write instance file: " + path);
    out << instance_to_json(inst);
}

namespace {

struct UF {
    std::vector<int> parent;
    explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool forced_high(const EdgeConstraint& e) {
    return (e.kind == ConstraintKind::ge || e.kind == ConstraintKind::eq) &&
           e.c >= 1.0 - kDegenerateTol;
}

bool forced_low(const EdgeConstraint& e) {
    return (e.kind == ConstraintKind::le || e.kind == ConstraintKind::eq) &&
           e.c <= -1.0 + kDegenerateTol;
}

// one resign-then-contract round; returns false when nothing degenerate is left
bool preprocess_round(SignedCompletionInstance& inst, std::vector<int>& vmap,
                      std::vector<bool>& flipped, bool& contracted_any) {
    const int n = inst.vertex_count();
    std::vector<std::pair<int, int>> f_plus, f_minus;
    for (const auto& e : inst.edges()) {
        if (forced_high(e)) f_plus.push_back({e.u, e.v});
        if (forced_low(e)) f_minus.push_back({e.u, e.v});
    }
    if (f_plus.empty() && f_minus.empty()) return false;

    // components of the forced-to-one graph
    UF uf(n);
    for (auto& [u, v] : f_plus) uf.unite(u, v);

    // forced-to-minus-one pairs must embed in a cut of the quotient: 2-color
    std::map<int, std::vector<int>> adj; // on component representatives
    for (auto& [u, v] : f_minus) {
        int a = uf.find(u), b = uf.find(v);
        if (a == b)
            throw MetricInfeasible("degenerate odd cycle: forced entries have no completion");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::map<int, int> color;
    for (auto& [start, _] : adj) {
        if (color.count(start)) continue;
        color[start] = 0;
        std::deque<int> q{start};
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : adj[x]) {
                if (!color.count(y)) {
                    color[y] = 1 - color[x];
                    q.push_back(y);
                } else if (color[y] == color[x]) {
                    throw MetricInfeasible(
                        "degenerate odd cycle: forced entries have no completion");
                }
            }
        }
    }

    // resign across the color-1 side
    std::vector<bool> side(n, false);
    for (int v = 0; v < n; ++v) {
        auto it = color.find(uf.find(v));
        side[v] = (it != color.end() && it->second == 1);
    }
    std::vector<EdgeConstraint> resigned;
    for (auto e : inst.edges()) {
        if (side[e.u] != side[e.v]) {
            e.c = -e.c;
            if (e.kind == ConstraintKind::ge)
                e.kind = ConstraintKind::le;
            else if (e.kind == ConstraintKind::le)
                e.kind = ConstraintKind::ge;
        }
        resigned.push_back(e);
    }
    // flips accumulate on original vertices through the current quotient
    for (size_t ov = 0; ov < vmap.size(); ++ov)
        if (side[vmap[ov]]) flipped[ov] = !flipped[ov];

    // now every forced entry is a forced-to-one edge; contract them all
    UF uf2(n);
    for (const auto& e : resigned)
        if (forced_high(e)) uf2.unite(e.u, e.v);

    std::vector<int> newid(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        int r = uf2.find(v);
        if (newid[r] == -1) newid[r] = next++;
        newid[v] = newid[r];
    }
    if (next < n) contracted_any = true;

    // merge constraints per contracted pair as interval bounds
    struct Bounds {
        double lo = -2.0, hi = 2.0; // sentinels outside [-1,1]
        bool has_lo = false, has_hi = false;
    };
    std::map<std::pair<int, int>, Bounds> merged;
    for (const auto& e : resigned) {
        int a = newid[e.u], b = newid[e.v];
        if (a == b) {
            // loop: constraint against the fixed unit diagonal
            if (e.kind == ConstraintKind::le && e.c < 1.0 - kDegenerateTol)
                throw MetricInfeasible("contracted pair violates an upper bound below 1");
            if (e.kind == ConstraintKind::eq && std::fabs(e.c - 1.0) > kDegenerateTol)
                throw MetricInfeasible("contracted pair violates an equality below 1");
            continue; // ge against 1 always holds
        }
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto& bd = merged[key];
        if (e.kind == ConstraintKind::ge || e.kind == ConstraintKind::eq) {
            bd.lo = bd.has_lo ? std::max(bd.lo, e.c) : e.c;
            bd.has_lo = true;
        }
        if (e.kind == ConstraintKind::le || e.kind == ConstraintKind::eq) {
            bd.hi = bd.has_hi ? std::min(bd.hi, e.c) : e.c;
            bd.has_hi = true;
        }
    }
    std::vector<EdgeConstraint> out_edges;
    for (const auto& [key, bd] : merged) {
        if (bd.has_lo && bd.has_hi && bd.lo > bd.hi + kDegenerateTol)
            throw MetricInfeasible("contradictory forced bounds on one entry");
        if (bd.has_lo && bd.has_hi && bd.lo >= bd.hi - kDegenerateTol) {
            out_edges.push_back({key.first, key.second, ConstraintKind::eq, bd.lo});
            continue;
        }
        if (bd.has_lo) out_edges.push_back({key.first, key.second, ConstraintKind::ge, bd.lo});
        if (bd.has_hi) out_edges.push_back({key.first, key.second, ConstraintKind::le, bd.hi});
    }

    inst = SignedCompletionInstance(next, std::move(out_edges));
    for (auto& m : vmap) m = newid[m];
    return true;
}

} // namespace

PreprocessResult preprocess_degenerate(const SignedCompletionInstance& inst) {
    PreprocessResult out;
    out.reduced = inst;
    out.vertex_map.resize(inst.vertex_count());
    std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
    std::vector<bool> flipped(inst.vertex_count(), false);
    bool contracted = false;

    int guard = 0;
    while (preprocess_round(out.reduced, out.vertex_map, flipped, contracted)) {
        if (++guard > inst.vertex_count() + 2)
            throw NumericalError("preprocess_degenerate: did not reach a fixpoint");
    }
    out.extra_stage = contracted;
    for (int v = 0; v < inst.vertex_count(); ++v)
        if (flipped[v]) out.resign_set.push_back(v);
    return out;
}

SymMatrix lift_solution(const PreprocessResult& pre, const SymMatrix& reduced_x) {
    const int n = static_cast<int>(pre.vertex_map.size());
    if (reduced_x.size() != pre.reduced.vertex_count())
        throw InvalidInput("lift_solution: size mismatch");
    std::vector<double> sign(n, 1.0);
    for (int v : pre.resign_set) sign[v] = -1.0;
    SymMatrix x(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double val = (i == j) ? 1.0
                                  : sign[i] * sign[j] *
                                        reduced_x(pre.vertex_map[i], pre.vertex_map[j]);
            x.set(i, j, val);
        }
    return x;
}

SignedCompletionInstance clique_sum_instance(const SignedCompletionInstance& a,
                                             const SignedCompletionInstance& b,
                                             const std::vector<int>& map_a,
                                             const std::vector<int>& map_b, int n_combined) {
    if (static_cast<int>(map_a.size()) != a.vertex_count() ||
        static_cast<int>(map_b.size()) != b.vertex_count())
        throw InvalidCombine("clique_sum_instance: vertex map size mismatch");
    auto check_map = [&](const std::vector<int>& m) {
        std::set<int> seen;
        for (int v : m) {
            if (v < 0 || v >= n_combined) throw InvalidCombine("clique_sum_instance: map range");
            if (!seen.insert(v).second) throw InvalidCombine("clique_sum_instance: map not injective");
        }
    };
    check_map(map_a);
    check_map(map_b);

    std::set<int> image_a(map_a.begin(), map_a.end());
    std::set<int> shared;
    for (int v : map_b)
        if (image_a.count(v)) shared.insert(v);

    // per-piece constraint sets restricted to shared pairs
    auto shared_constraints = [&](const SignedCompletionInstance& inst,
                                  const std::vector<int>& map) {
        std::map<std::pair<int, int>, std::set<std::pair<int, double>>> out;
        for (const auto& e : inst.edges()) {
            int u = map[e.u], v = map[e.v];
            if (!shared.count(u) || !shared.count(v)) continue;
            if (u > v) std::swap(u, v);
            out[{u, v}].insert({static_cast<int>(e.kind), e.c});
        }
        return out;
    };
    auto sa = shared_constraints(a, map_a), sb = shared_constraints(b, map_b);
    if (sa != sb) throw InvalidCombine("clique_sum_instance: shared clique constraints disagree");
    // every shared pair must be constrained (the separator is a clique)
    for (int u : shared)
        for (int v : shared)
            if (u < v && !sa.count({u, v}))
                throw InvalidCombine("clique_sum_instance: shared set is not a clique");

    std::map<std::tuple<int, int, int>, double> edges;
    auto add_from = [&](const SignedCompletionInstance& inst, const std::vector<int>& map) {
        for (const auto& e : inst.edges()) {
            int u = map[e.u], v = map[e.v];
            if (u > v) std::swap(u, v);
            edges[{u, v, static_cast<int>(e.kind)}] = e.c;
        }
    };
    add_from(a, map_a);
    add_from(b, map_b);

    std::vector<EdgeConstraint> out;
    for (const auto& [key, c] : edges)
        out.push_back({std::get<0>(key), std::get<1>(key),
                       static_cast<ConstraintKind>(std::get<2>(key)), c});
    return SignedCompletionInstance(n_combined, std::move(out));
}

} // namespace sdcomp
