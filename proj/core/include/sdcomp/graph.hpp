#ifndef SDCOMP_GRAPH_HPP
#define SDCOMP_GRAPH_HPP

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sdcomp/errors.hpp"

namespace sdcomp {

// Simple undirected graph on vertices 0..n-1. No self-loops, no parallel edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n) {
        if (n < 0) throw InvalidInput("Graph: negative vertex count");
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    const std::set<std::pair<int, int>>& edges() const { return edges_; }
    std::vector<int> neighbors(int v) const;
    int degree(int v) const;

    Graph induced(const std::vector<int>& vertices) const; // vertices renumbered 0..k-1

    static Graph complete(int n);
    static Graph cycle(int n);
    static Graph path(int n);
    static Graph wheel(int n); // center 0, rim 1..n-1

    bool operator==(const Graph& rhs) const { return n_ == rhs.n_ && edges_ == rhs.edges_; }

private:
    int n_ = 0;
    std::set<std::pair<int, int>> edges_; // normalized (min,max)
};

struct ChordalityResult {
    bool chordal = false;
    std::vector<int> elimination_order; // valid perfect elimination ordering when chordal
    std::vector<int> hole;              // induced cycle of length >= 4 when not chordal
};

// Lexicographic BFS (lowest-index tie break) with an independent verification of
// the elimination ordering; a hole is extracted and verified on the false branch.
ChordalityResult is_chordal(const Graph& g);

// checks that order is a perfect elimination ordering of g (order[0] eliminated first)
bool verify_elimination_order(const Graph& g, const std::vector<int>& order);
// checks that cycle is an induced cycle of length >= 4
bool verify_hole(const Graph& g, const std::vector<int>& cycle);

// Series-parallel test: every biconnected component reduces to a single edge
// under degree-2 suppression and parallel-edge merging.
bool is_k4_minor_free(const Graph& g);

std::vector<std::vector<int>> connected_components(const Graph& g);
std::vector<std::vector<int>> biconnected_components(const Graph& g); // vertex sets

} // namespace sdcomp

#endif
