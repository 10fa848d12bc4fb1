#ifndef SDCOMP_CONFIG_HPP
#define SDCOMP_CONFIG_HPP

#include "sdcomp/errors.hpp"

namespace sdcomp {

// Tolerances shared across the pipeline. Rank decisions drive the staging of
// facial reduction, so every rank threshold is configurable rather than baked in.
struct Tolerances {
    double rank = 1e-8;        // relative eigenvalue threshold for rank decisions
    double psd = 1e-8;         // absolute floor on restricted eigenvalues
    double feas = 1e-7;        // per-constraint feasibility residual
    double pd = 1e-7;          // strict positivity margin for interior points
    double obj = 1e-8;         // dual objective ceiling for a reducing certificate
    double infeas = 1e-6;      // dual objective below -infeas certifies infeasibility
    double support = 1e-6;     // |omega| above this counts as a stressed entry
    double tight_cycle = 1e-9; // absolute slack for a tight metric equality
    double ortho = 1e-10;      // pairwise orthonormality drift allowed in a basis
};

struct RunConfig {
    Tolerances tol;
    int max_iters = 200;       // Newton iteration cap for one oracle call
    int cycle_cap = 12;        // largest vertex count for exhaustive cycle work
    double step_frac = 0.98;   // fraction of the distance to the cone boundary
    double gap_target = 1e-9;  // duality gap at which the path following stops
    bool verbose = false;

    void validate() const {
        if (max_iters < 1 || cycle_cap < 1) throw InvalidInput("RunConfig: caps must be >= 1");
        if (tol.rank <= 0 || tol.psd <= 0 || tol.feas <= 0 || tol.pd <= 0 ||
            tol.obj <= 0 || tol.support <= 0 || tol.tight_cycle <= 0 || tol.infeas <= 0)
            throw InvalidInput("RunConfig: tolerances must be positive");
        if (step_frac <= 0 || step_frac >= 1) throw InvalidInput("RunConfig: step_frac in (0,1)");
        if (gap_target <= 0) throw InvalidInput("RunConfig: gap_target must be positive");
    }
};

} // namespace sdcomp

#endif
