#include "sdcomp/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stack>

namespace sdcomp {

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidInput("add_edge: vertex out of range");
    if (u == v) throw InvalidInput("add_edge: self-loop");
    edges_.insert({std::min(u, v), std::max(u, v)});
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    return edges_.count({std::min(u, v), std::max(u, v)}) > 0;
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges_) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    return out;
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

Graph Graph::induced(const std::vector<int>& vertices) const {
    Graph h(static_cast<int>(vertices.size()));
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            if (has_edge(vertices[i], vertices[j]))
                h.add_edge(static_cast<int>(i), static_cast<int>(j));
    return h;
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph Graph::cycle(int n) {
    if (n < 3) throw InvalidInput("cycle: need n >= 3");
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph Graph::path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph Graph::wheel(int n) {
    if (n < 4) throw InvalidInput("wheel: need n >= 4");
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(0, i);
    for (int i = 1; i < n; ++i) g.add_edge(i, i % (n - 1) + 1);
    return g;
}

namespace {

// LexBFS visit order; ties broken toward the lowest vertex index.
std::vector<int> lex_bfs(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> labels(n);
    std::vector<bool> visited(n, false);
    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (visited[v]) continue;
            if (best == -1 || labels[v] > labels[best]) best = v;
        }
        visited[best] = true;
        order.push_back(best);
        for (int u : g.neighbors(best))
            if (!visited[u]) labels[u].push_back(n - step); // descending stamps
    }
    return order;
}

// shortest path from s to t inside the allowed vertex set; empty when none
std::vector<int> shortest_path_within(const Graph& g, int s, int t,
                                      const std::vector<bool>& allowed) {
    const int n = g.vertex_count();
    std::vector<int> prev(n, -1);
    std::deque<int> queue{s};
    std::vector<bool> seen(n, false);
    seen[s] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == t) break;
        for (int u : g.neighbors(v)) {
            if (seen[u] || !allowed[u]) continue;
            seen[u] = true;
            prev[u] = v;
            queue.push_back(u);
        }
    }
    if (!seen[t]) return {};
    std::vector<int> path;
    for (int v = t; v != -1; v = prev[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

// induced cycle through v whose only neighbors on the cycle are u and w
std::vector<int> hole_through(const Graph& g, int v, int u, int w) {
    const int n = g.vertex_count();
    std::vector<bool> allowed(n, true);
    allowed[v] = false;
    for (int x : g.neighbors(v)) allowed[x] = false;
    allowed[u] = true;
    allowed[w] = true;
    auto path = shortest_path_within(g, u, w, allowed);
    if (path.empty()) return {};
    path.push_back(v);
    return path; // cycle as vertex list
}

std::vector<int> exhaustive_hole_search(const Graph& g) {
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        for (size_t a = 0; a < nb.size(); ++a)
            for (size_t b = a + 1; b < nb.size(); ++b) {
                if (g.has_edge(nb[a], nb[b])) continue;
                auto hole = hole_through(g, v, nb[a], nb[b]);
                if (!hole.empty() && verify_hole(g, hole)) return hole;
            }
    }
    return {};
}

} // namespace

bool verify_elimination_order(const Graph& g, const std::vector<int>& order) {
    const int n = g.vertex_count();
    if (static_cast<int>(order.size()) != n) return false;
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        if (order[i] < 0 || order[i] >= n || pos[order[i]] != -1) return false;
        pos[order[i]] = i;
    }
    // later neighbors of each eliminated vertex must form a clique
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> later;
        for (int u : g.neighbors(v))
            if (pos[u] > i) later.push_back(u);
        for (size_t a = 0; a < later.size(); ++a)
            for (size_t b = a + 1; b < later.size(); ++b)
                if (!g.has_edge(later[a], later[b])) return false;
    }
    return true;
}

bool verify_hole(const Graph& g, const std::vector<int>& cycle) {
    const size_t k = cycle.size();
    if (k < 4) return false;
    std::set<int> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != k) return false;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
            if (consecutive != g.has_edge(cycle[i], cycle[j])) return false;
        }
    return true;
}

ChordalityResult is_chordal(const Graph& g) {
    const int n = g.vertex_count();
    ChordalityResult out;
    std::vector<int> visit = lex_bfs(g);
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) pos[visit[i]] = i;

    // elimination order = reverse visit order
    std::vector<int> elim(visit.rbegin(), visit.rend());

    // PEO check: the earlier-visited neighbors of v, minus the latest of them,
    // must all be adjacent to that latest one.
    for (int i = n - 1; i >= 0; --i) {
        int v = visit[i];
        std::vector<int> earlier;
        for (int u : g.neighbors(v))
            if (pos[u] < i) earlier.push_back(u);
        if (earlier.size() < 2) continue;
        int parent = *std::max_element(earlier.begin(), earlier.end(),
                                       [&](int a, int b) { return pos[a] < pos[b]; });
        for (int w : earlier) {
            if (w == parent || g.has_edge(w, parent)) continue;
            // failing triple: v adjacent to parent and w, parent-w non-adjacent
            auto hole = hole_through(g, v, parent, w);
            if (hole.empty() || !verify_hole(g, hole)) hole = exhaustive_hole_search(g);
            if (hole.empty()) throw NumericalError("is_chordal: failed to extract a hole");
            out.chordal = false;
            out.hole = hole;
            return out;
        }
    }
    if (!verify_elimination_order(g, elim))
        throw NumericalError("is_chordal: produced ordering failed verification");
    out.chordal = true;
    out.elimination_order = elim;
    return out;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::stack<int> st;
        st.push(s);
        comp[s] = c;
        while (!st.empty()) {
            int v = st.top();
            st.pop();
            for (int u : g.neighbors(v))
                if (comp[u] == -1) {
                    comp[u] = c;
                    st.push(u);
                }
        }
        ++c;
    }
    std::vector<std::vector<int>> out(c);
    for (int v = 0; v < n; ++v) out[comp[v]].push_back(v);
    return out;
}

namespace {

void biconnect_dfs(const Graph& g, int v, int parent, int& timer, std::vector<int>& disc,
                   std::vector<int>& low, std::stack<std::pair<int, int>>& estack,
                   std::vector<std::vector<int>>& out) {
    disc[v] = low[v] = timer++;
    for (int u : g.neighbors(v)) {
        if (u == parent) continue;
        if (disc[u] == -1) {
            estack.push({v, u});
            biconnect_dfs(g, u, v, timer, disc, low, estack, out);
            low[v] = std::min(low[v], low[u]);
            if (low[u] >= disc[v]) {
                std::set<int> verts;
                while (true) {
                    auto [a, b] = estack.top();
                    estack.pop();
                    verts.insert(a);
                    verts.insert(b);
                    if (a == v && b == u) break;
                }
                out.emplace_back(verts.begin(), verts.end());
            }
        } else if (disc[u] < disc[v]) {
            estack.push({v, u});
            low[v] = std::min(low[v], disc[u]);
        }
    }
}

} // namespace

std::vector<std::vector<int>> biconnected_components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> disc(n, -1), low(n, -1);
    std::stack<std::pair<int, int>> estack;
    std::vector<std::vector<int>> out;
    int timer = 0;
    for (int v = 0; v < n; ++v)
        if (disc[v] == -1) biconnect_dfs(g, v, -1, timer, disc, low, estack, out);
    return out;
}

bool is_k4_minor_free(const Graph& g) {
    for (const auto& compVerts : biconnected_components(g)) {
        if (compVerts.size() < 4) continue;
        // series-parallel reduction on the component multigraph
        Graph comp = g.induced(compVerts);
        int n = comp.vertex_count();
        std::map<std::pair<int, int>, int> mult;
        for (const auto& e : comp.edges()) mult[e] = 1;
        std::vector<bool> alive(n, true);
        bool progress = true;
        while (progress) {
            progress = false;
            // merge parallels
            for (auto& [e, m] : mult)
                if (m > 1) {
                    m = 1;
                    progress = true;
                }
            // suppress degree-2 vertices
            for (int v = 0; v < n && !progress; ++v) {
                if (!alive[v]) continue;
                std::vector<int> nb;
                for (const auto& [e, m] : mult) {
                    if (m == 0) continue;
                    if (e.first == v) nb.push_back(e.second);
                    if (e.second == v) nb.push_back(e.first);
                }
                if (nb.size() == 2 && nb[0] != nb[1]) {
                    int a = nb[0], b = nb[1];
                    mult[{std::min(a, v), std::max(a, v)}] = 0;
                    mult[{std::min(b, v), std::max(b, v)}] = 0;
                    mult[{std::min(a, b), std::max(a, b)}] += 1;
                    alive[v] = false;
                    progress = true;
                }
            }
        }
        int remaining_edges = 0, remaining_vertices = 0;
        for (const auto& [e, m] : mult) remaining_edges += m;
        for (int v = 0; v < n; ++v)
            if (alive[v]) ++remaining_vertices;
        if (!(remaining_edges <= 1 && remaining_vertices <= 2)) return false;
    }
    return true;
}

} // namespace sdcomp
