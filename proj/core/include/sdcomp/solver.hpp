#ifndef SDCOMP_SOLVER_HPP
#define SDCOMP_SOLVER_HPP

#include <functional>
#include <vector>

#include "sdcomp/config.hpp"
#include "sdcomp/linalg.hpp"
#include "sdcomp/matrix.hpp"

namespace sdcomp {

// Canonical dual-side program solved by the path-following engine:
//
//   minimize    obj . y
//   subject to  S(y) = sum_i y_i mats[i]  positive definite (iterates interior),
//               y_i > 0 for i with nonneg[i],
//               norm . y = 1.
//
// The KKT multiplier of the normalization recovers the primal side: at an
// exactly centered point,  <mats[i], mu S^{-1} - lambda I>  equals obj[i] for
// free coordinates and obj[i] - mu/y_i for nonnegative ones.
struct ConicProblem {
    int r = 0;
    std::vector<SymMatrix> mats;
    std::vector<double> obj;
    std::vector<bool> nonneg;
    std::vector<double> norm;
    std::vector<double> start; // strictly feasible, norm . start = 1

    int size() const { return static_cast<int>(mats.size()); }
};

struct ConicSolution {
    std::vector<double> y;
    SymMatrix s;              // S(y)
    double objective = 0.0;   // obj . y
    double lambda = 0.0;      // multiplier of the normalization row
    double mu = 0.0;          // final barrier parameter
    double gap = 0.0;         // mu * (r + #nonneg)
    double grad_residual = 0.0;
    int iterations = 0;
    bool converged = false;       // reached the gap target, or a stop check fired
    bool objective_dived = false; // stopped early because obj fell below the floor
    bool stopped_by_check = false;
};

// Called with the centered snapshot after every barrier stage; returning true
// ends the solve there. Lets callers classify outcomes as soon as they are
// certifiable instead of riding the path into ill-conditioned territory.
using StopCheck = std::function<bool(const ConicSolution&)>;

// obj_floor: return early (still strictly feasible) once obj . y drops below it.
ConicSolution solve_conic(const ConicProblem& prob, const RunConfig& cfg,
                          double obj_floor = -1e100, const StopCheck& stop = {});

} // namespace sdcomp

#endif
