#ifndef SDCOMP_CONSTRUCTIONS_HPP
#define SDCOMP_CONSTRUCTIONS_HPP

#include <cstdint>

#include "sdcomp/framework.hpp"

namespace sdcomp {

// Cycle with two coincident endpoints and the rest strictly increasing along a
// quarter circle; the completion is unique of rank 2 and needs two reduction
// stages. Vertices 0..n-1 around the cycle.
SphericalFramework gen_cycle_degenerate(int n);

// Wheel with center 0 and rim 1..n-1: rim starts at the three coordinate axes,
// center at the midpoint of the first two, remaining rim vertices on the arc
// from e3 to e1. Unique completion of rank 3.
SphericalFramework gen_wheel_p1(int n);

// Subdivision of K4 on branch vertices v0..v3 (indices 0..3) with per-path
// subdivision counts; the anchor edge on the v1-v2 path and the vertex next to
// v0 toward v3 carry the coordinate axes.
struct SubdividedK4Spec {
    int s12 = 0, s23 = 0, s31 = 0; // outer triangle paths
    int s01 = 0, s02 = 0, s03 = 1; // spoke paths from the center v0
    int k12 = 0;                   // anchor edge position along the v1-v2 path
    double eps = 0.05;             // offset of v1/v2 from the anchor axes
};

SphericalFramework gen_subdivided_k4(const SubdividedK4Spec& spec);

enum class WheelSplitVariant {
    rim_subdivision,      // subdivision of a wheel rim
    center_split_triangle, // center split with a triangle at the split vertex
    center_split_square    // center split with an induced four-cycle instead
};

struct WheelSplittingSpec {
    WheelSplitVariant variant = WheelSplitVariant::rim_subdivision;
    int n = 7;            // wheel size
    int subdivisions = 1; // rim_subdivision only
    double eps = 0.05;    // center_split_square only
};

SphericalFramework gen_wheel_splitting(const WheelSplittingSpec& spec);

// Recursive treewidth-3 family with linearly growing singularity degree.
// Vertex 0 doubles as the first v and w; triples (u_i, v_i, w_i) follow.
SphericalFramework gen_gk(int k, double theta = 2.35619449019234493); // 3*pi/4

// Random rank-r point of the elliptope on the complete graph: normalized
// columns of a Gaussian r x n factor. Deterministic in the seed.
SphericalFramework gen_complete_boundary(int n, int r, uint64_t seed = 1);

// vertices that any valid reduction sequence must eventually stress, when the
// family's uniqueness argument provides them (empty otherwise)
std::vector<int> reduction_targets(const SphericalFramework& f);

enum class Family {
    degenerate_cycle,
    wheel_p1,
    subdivided_k4,
    wheel_splitting,
    gk,
    complete_boundary
};

struct ConstructionSpec {
    Family family = Family::degenerate_cycle;
    int n = 5;
    int k = 3;
    int rank = 2;
    std::uint64_t seed = 1;
    double theta = 2.35619449019234493;
    SubdividedK4Spec k4;
    WheelSplittingSpec split;
};

SphericalFramework generate(const ConstructionSpec& spec);

} // namespace sdcomp

#endif
