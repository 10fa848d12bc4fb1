#ifndef SDCOMP_MET_HPP
#define SDCOMP_MET_HPP

#include <optional>
#include <vector>

#include "sdcomp/config.hpp"
#include "sdcomp/matrix.hpp"
#include "sdcomp/signed_graph.hpp"

namespace sdcomp {

// point of the arccos-transformed edge space, one value in [0,1] per edge
struct MetPoint {
    std::vector<double> x;
};

// x(e) = arccos(c(e)) / pi, monotone decreasing in c
MetPoint arccos_map(const std::vector<double>& c);

struct MetWitness {
    std::vector<int> cycle;       // vertex sequence
    std::vector<int> flip_set;    // positions along the cycle (odd count)
    double slack = 0.0;           // negative when violated
};

struct MetCheck {
    bool member = true;
    std::optional<MetWitness> witness;
    double min_slack = 0.0; // over all cycle inequalities
};

// cycle inequalities of the unsigned metric polytope; x aligned with
// g.edges() in sorted order. Exhaustive over simple cycles, n <= cycle cap.
MetCheck met_membership(const Graph& g, const MetPoint& x, const RunConfig& cfg = {});

struct SignedMetWitness {
    SignedCycle cycle;
    double slack = 0.0;
};

struct SignedMetCheck {
    bool member = true;
    std::optional<SignedMetWitness> witness;
    double min_slack = 0.0;
};

// odd-cycle inequalities of the signed metric polytope; x aligned with
// sg.edges() in sorted order
SignedMetCheck met_membership_signed(const SignedGraph& sg, const MetPoint& x,
                                     const RunConfig& cfg = {});

// odd cycles whose metric inequality holds with equality for arccos(c)/pi
std::vector<SignedCycle> tight_cycles(const SignedGraph& sg, const std::vector<double>& c,
                                      const RunConfig& cfg = {});

// The unique (up to scale) dual stress pinned by a tight cycle: computed from
// the circle realization at cumulative angles, normalized to max |edge| = 1,
// PSD with corank 2 on the cycle's vertices.
struct CycleStress {
    std::vector<double> vertex; // aligned with cycle.vertices
    std::vector<double> edge;   // aligned with cycle positions
};

CycleStress tight_cycle_dual(const SignedCycle& cycle, const std::vector<double>& weights,
                             const RunConfig& cfg = {});

// embed a cycle stress into an n-vertex stress matrix
SymMatrix cycle_stress_matrix(const SignedCycle& cycle, const CycleStress& s, int n);

struct LaurentResult {
    bool feasible = false;
    bool exact = true; // false when the signed graph has an odd-K4 minor (or is too
                       // large to test): membership is then only necessary
};

// metric-polytope membership as a feasibility test; exact on odd-K4-minor-free
// signed graphs
LaurentResult laurent_feasibility(const SignedGraph& sg, const std::vector<double>& c,
                                  const RunConfig& cfg = {});

// index of a signed edge within sg.edges() sorted order
int signed_edge_index(const SignedGraph& sg, int u, int v, EdgeSign sign);

} // namespace sdcomp

#endif
