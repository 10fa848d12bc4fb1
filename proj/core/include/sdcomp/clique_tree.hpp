#ifndef SDCOMP_CLIQUE_TREE_HPP
#define SDCOMP_CLIQUE_TREE_HPP

#include <memory>
#include <optional>
#include <vector>

#include "sdcomp/graph.hpp"

namespace sdcomp {

enum class LeafClass { complete, chordal, k4_minor_free, other };

// Decomposition of a graph along clique separators. Leaves are the atoms
// (induced subgraphs with no clique separator), internal nodes carry the
// separator that split them.
struct CliqueSumTree {
    struct Node {
        std::vector<int> vertices;  // original vertex ids covered by this subtree
        std::vector<int> separator; // original ids; empty on leaves
        LeafClass cls = LeafClass::other; // meaningful on leaves
        Graph subgraph;             // leaf only: atom renumbered by `vertices`
        std::vector<std::unique_ptr<Node>> children;
        bool is_leaf() const { return children.empty(); }
    };

    std::unique_ptr<Node> root;

    std::vector<const Node*> leaves() const;
    // union of the leaf subgraphs, mapped back to original ids
    Graph reassemble(int n) const;
    // every internal separator induces a clique in g
    bool separators_are_cliques(const Graph& g) const;
};

CliqueSumTree clique_sum_decompose(const Graph& g);

// All minimal vertex separators, by neighborhood-component generation plus
// expansion. Exponential worst case; fine at the sizes used here.
std::vector<std::vector<int>> minimal_separators(const Graph& g);

struct SdBounds {
    std::optional<int> sd_exact;
    std::optional<int> sd_upper;
    std::optional<int> sd_star_upper;
    bool chordal = false;
    bool series_parallel = false;
    bool decomposes = false; // clique sums of complete / chordal / K4-minor-free pieces
};

// Structure-theorem bounds: sd = 0 iff edgeless, sd = 1 iff chordal with an
// edge, sd* <= 1 and sd <= 2 when the clique-sum decomposition lands in the
// tractable classes. No bound otherwise.
SdBounds classify_sd_bounds(const Graph& g);

} // namespace sdcomp

#endif
