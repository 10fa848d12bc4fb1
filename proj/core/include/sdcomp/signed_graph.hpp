#ifndef SDCOMP_SIGNED_GRAPH_HPP
#define SDCOMP_SIGNED_GRAPH_HPP

#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "sdcomp/graph.hpp"

namespace sdcomp {

enum class EdgeSign { even, odd };

struct SignedEdge {
    int u, v;          // u < v
    EdgeSign sign;
};

// Signed multigraph: parallel edges allowed, but at most one odd and one even
// edge per vertex pair (further duplicates carry no information).
class SignedGraph {
public:
    SignedGraph() = default;
    explicit SignedGraph(int n) : n_(n) {
        if (n < 0) throw InvalidInput("SignedGraph: negative vertex count");
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    void add_edge(int u, int v, EdgeSign sign);
    bool has_edge(int u, int v, EdgeSign sign) const;
    std::vector<SignedEdge> edges() const;

    Graph underlying() const; // simple graph on the same vertices

    static SignedGraph all_even(const Graph& g);
    static SignedGraph all_odd(const Graph& g);
    static SignedGraph doubled(const Graph& g); // one odd and one even copy per edge

private:
    int n_ = 0;
    std::set<std::tuple<int, int, int>> edges_; // (u, v, sign) normalized u < v
};

// flips signs exactly on delta(S); involution
SignedGraph resign(const SignedGraph& g, const std::vector<int>& s);

struct ContractionResult {
    SignedGraph graph;
    std::vector<int> vertex_map; // old vertex -> new vertex
};

// contracts the even edges listed in f (as vertex pairs); self-loops dropped,
// parallel duplicates deduplicated
ContractionResult contract_even_edges(const SignedGraph& g,
                                      const std::vector<std::pair<int, int>>& f);

// exhaustive signed-minor search, n <= 12
bool is_odd_k4_minor_free(const SignedGraph& g);

// Simple cycle in a signed multigraph: vertices[i] -- vertices[i+1] via an edge
// of signs[i]; closes back to vertices[0]. Length-2 cycles use the two parallel
// copies of a doubled pair.
struct SignedCycle {
    std::vector<int> vertices;
    std::vector<EdgeSign> signs;

    int length() const { return static_cast<int>(vertices.size()); }
    int odd_count() const {
        int c = 0;
        for (auto s : signs)
            if (s == EdgeSign::odd) ++c;
        return c;
    }
    bool odd() const { return odd_count() % 2 == 1; }
};

// all simple cycles (vertex-simple; plus parallel-pair 2-cycles) up to max_len,
// with every parity selection over parallel edges; filtered to odd parity
std::vector<SignedCycle> enumerate_odd_cycles(const SignedGraph& g, int max_len);

// same enumeration without the parity filter
std::vector<SignedCycle> enumerate_cycles(const SignedGraph& g, int max_len);

} // namespace sdcomp

#endif
