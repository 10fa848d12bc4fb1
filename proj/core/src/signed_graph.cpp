#include "sdcomp/signed_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace sdcomp {

void SignedGraph::add_edge(int u, int v, EdgeSign sign) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidInput("add_edge: vertex out of range");
    if (u == v) throw InvalidInput("add_edge: self-loop");
    edges_.insert({std::min(u, v), std::max(u, v), static_cast<int>(sign)});
}

bool SignedGraph::has_edge(int u, int v, EdgeSign sign) const {
    if (u == v) return false;
    return edges_.count({std::min(u, v), std::max(u, v), static_cast<int>(sign)}) > 0;
}

std::vector<SignedEdge> SignedGraph::edges() const {
    std::vector<SignedEdge> out;
    out.reserve(edges_.size());
    for (const auto& [u, v, s] : edges_) out.push_back({u, v, static_cast<EdgeSign>(s)});
    return out;
}

Graph SignedGraph::underlying() const {
    Graph g(n_);
    for (const auto& [u, v, s] : edges_) {
        (void)s;
        if (!g.has_edge(u, v)) g.add_edge(u, v);
    }
    return g;
}

SignedGraph SignedGraph::all_even(const Graph& g) {
    SignedGraph sg(g.vertex_count());
    for (const auto& [u, v] : g.edges()) sg.add_edge(u, v, EdgeSign::even);
    return sg;
}

SignedGraph SignedGraph::all_odd(const Graph& g) {
    SignedGraph sg(g.vertex_count());
    for (const auto& [u, v] : g.edges()) sg.add_edge(u, v, EdgeSign::odd);
    return sg;
}

SignedGraph SignedGraph::doubled(const Graph& g) {
    SignedGraph sg(g.vertex_count());
    for (const auto& [u, v] : g.edges()) {
        sg.add_edge(u, v, EdgeSign::even);
        sg.add_edge(u, v, EdgeSign::odd);
    }
    return sg;
}

SignedGraph resign(const SignedGraph& g, const std::vector<int>& s) {
    std::vector<bool> in_s(g.vertex_count(), false);
    for (int v : s) {
        if (v < 0 || v >= g.vertex_count()) throw InvalidInput("resign: vertex out of range");
        in_s[v] = true;
    }
    SignedGraph out(g.vertex_count());
    for (const auto& e : g.edges()) {
        bool crossing = in_s[e.u] != in_s[e.v];
        EdgeSign sign = e.sign;
        if (crossing) sign = (sign == EdgeSign::even) ? EdgeSign::odd : EdgeSign::even;
        out.add_edge(e.u, e.v, sign);
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

ContractionResult contract_even_edges(const SignedGraph& g,
                                      const std::vector<std::pair<int, int>>& f) {
    UnionFind uf(g.vertex_count());
    for (const auto& [u, v] : f) {
        if (!g.has_edge(u, v, EdgeSign::even))
            throw InvalidContraction("contract_even_edges: pair has no even edge");
        uf.unite(u, v);
    }
    // compress component representatives to 0..k-1
    std::vector<int> vmap(g.vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = uf.find(v);
        if (vmap[r] == -1) vmap[r] = next++;
        vmap[v] = vmap[r];
    }
    SignedGraph contracted(next);
    for (const auto& e : g.edges()) {
        int a = vmap[e.u], b = vmap[e.v];
        if (a == b) continue; // self-loop dropped
        contracted.add_edge(a, b, e.sign);
    }
    return {std::move(contracted), std::move(vmap)};
}

namespace {

// enumerate each connected even-subset exactly once: candidates processed in a
// fixed order and forbidden afterwards, so every superset appears once
void grow_connected(uint32_t current, uint32_t forbidden, const std::vector<uint32_t>& even_adj,
                    uint32_t allowed, std::vector<uint32_t>& out) {
    out.push_back(current);
    uint32_t nbrs = 0;
    for (uint32_t rest = current; rest;) {
        int v = __builtin_ctz(rest);
        rest &= rest - 1;
        nbrs |= even_adj[v];
    }
    uint32_t cand = nbrs & allowed & ~current & ~forbidden;
    uint32_t done = 0;
    while (cand) {
        int v = __builtin_ctz(cand);
        cand &= cand - 1;
        grow_connected(current | (1u << v), forbidden | done, even_adj, allowed, out);
        done |= 1u << v;
    }
}

// all subsets connected in the even subgraph (bitmask adjacency), n <= 12
std::vector<uint32_t> connected_even_subsets(int n, const std::vector<uint32_t>& even_adj) {
    std::vector<uint32_t> out;
    for (int v = 0; v < n; ++v) {
        uint32_t allowed = ~((1u << v) - 1); // keep v as the subset minimum
        grow_connected(1u << v, 0, even_adj, allowed, out);
    }
    return out;
}

bool odd_linked(uint32_t a, uint32_t b, const std::vector<std::pair<int, int>>& odd_edges) {
    for (const auto& [u, v] : odd_edges) {
        uint32_t mu = 1u << u, mv = 1u << v;
        if (((a & mu) && (b & mv)) || ((a & mv) && (b & mu))) return true;
    }
    return false;
}

// does the resigned graph contain four disjoint even-connected sets, pairwise
// joined by an odd edge
bool has_odd_k4_branch_sets(int n, const std::vector<uint32_t>& even_adj,
                            const std::vector<std::pair<int, int>>& odd_edges) {
    auto sets = connected_even_subsets(n, even_adj);
    const int m = static_cast<int>(sets.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (sets[i] & sets[j]) continue;
            if (!odd_linked(sets[i], sets[j], odd_edges)) continue;
            for (int k = j + 1; k < m; ++k) {
                if ((sets[i] | sets[j]) & sets[k]) continue;
                if (!odd_linked(sets[i], sets[k], odd_edges) ||
                    !odd_linked(sets[j], sets[k], odd_edges))
                    continue;
                for (int l = k + 1; l < m; ++l) {
                    if ((sets[i] | sets[j] | sets[k]) & sets[l]) continue;
                    if (odd_linked(sets[i], sets[l], odd_edges) &&
                        odd_linked(sets[j], sets[l], odd_edges) &&
                        odd_linked(sets[k], sets[l], odd_edges))
                        return true;
                }
            }
        }
    }
    return false;
}

} // namespace

bool is_odd_k4_minor_free(const SignedGraph& g) {
    const int n = g.vertex_count();
    if (n > 12) throw TooLarge("is_odd_k4_minor_free: n > 12");
    if (n < 4) return true;
    // a signed K4 minor needs an unsigned one underneath
    if (is_k4_minor_free(g.underlying())) return true;

    auto all_edges = g.edges();
    // every sequence of resignings collapses to one vertex 2-coloring; vertex 0
    // can be fixed since complementing the set leaves delta(S) unchanged
    for (uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<uint32_t> even_adj(n, 0);
        std::vector<std::pair<int, int>> odd_edges;
        for (const auto& e : all_edges) {
            // mask bit i covers vertex i+1; vertex 0 stays unflipped
            bool su = e.u > 0 && ((mask >> (e.u - 1)) & 1u);
            bool sv = e.v > 0 && ((mask >> (e.v - 1)) & 1u);
            bool odd = (e.sign == EdgeSign::odd) != (su != sv);
            if (odd) {
                odd_edges.push_back({e.u, e.v});
            } else {
                even_adj[e.u] |= 1u << e.v;
                even_adj[e.v] |= 1u << e.u;
            }
        }
        if (has_odd_k4_branch_sets(n, even_adj, odd_edges)) return false;
    }
    return true;
}

namespace {

void expand_parities(const SignedGraph& g, const std::vector<int>& cycle,
                     std::vector<SignedCycle>& out) {
    const int len = static_cast<int>(cycle.size());
    std::vector<std::vector<EdgeSign>> options(len);
    for (int i = 0; i < len; ++i) {
        int u = cycle[i], v = cycle[(i + 1) % len];
        if (g.has_edge(u, v, EdgeSign::even)) options[i].push_back(EdgeSign::even);
        if (g.has_edge(u, v, EdgeSign::odd)) options[i].push_back(EdgeSign::odd);
    }
    std::vector<EdgeSign> pick(len, EdgeSign::even);
    std::function<void(int)> rec = [&](int i) {
        if (i == len) {
            out.push_back({cycle, pick});
            return;
        }
        for (EdgeSign s : options[i]) {
            pick[i] = s;
            rec(i + 1);
        }
    };
    rec(0);
}

} // namespace

std::vector<SignedCycle> enumerate_cycles(const SignedGraph& g, int max_len) {
    const int n = g.vertex_count();
    std::vector<SignedCycle> out;

    // parallel-pair 2-cycles
    if (max_len >= 2) {
        for (const auto& e : g.edges()) {
            if (e.sign != EdgeSign::even) continue;
            if (g.has_edge(e.u, e.v, EdgeSign::odd))
                out.push_back({{e.u, e.v}, {EdgeSign::even, EdgeSign::odd}});
        }
    }

    Graph base = g.underlying();
    // vertex-simple cycles: smallest vertex first, second < last to kill direction
    std::vector<int> path;
    std::vector<bool> used(n, false);
    std::function<void(int, int)> dfs = [&](int start, int v) {
        if (static_cast<int>(path.size()) > max_len) return;
        for (int u : base.neighbors(v)) {
            if (u == start && path.size() >= 3) {
                if (path[1] < path.back()) expand_parities(g, path, out);
                continue;
            }
            if (u <= start || used[u]) continue;
            if (static_cast<int>(path.size()) == max_len) continue;
            used[u] = true;
            path.push_back(u);
            dfs(start, u);
            path.pop_back();
            used[u] = false;
        }
    };
    for (int s = 0; s < n; ++s) {
        path = {s};
        std::fill(used.begin(), used.end(), false);
        used[s] = true;
        dfs(s, s);
    }
    return out;
}

std::vector<SignedCycle> enumerate_odd_cycles(const SignedGraph& g, int max_len) {
    std::vector<SignedCycle> all = enumerate_cycles(g, max_len);
    std::vector<SignedCycle> out;
    for (auto& c : all)
        if (c.odd()) out.push_back(std::move(c));
    return out;
}

} // namespace sdcomp
