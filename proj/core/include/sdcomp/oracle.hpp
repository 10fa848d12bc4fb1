#ifndef SDCOMP_ORACLE_HPP
#define SDCOMP_ORACLE_HPP

#include <variant>

#include "sdcomp/instance.hpp"
#include "sdcomp/solver.hpp"
#include "sdcomp/stress.hpp"

namespace sdcomp {

// Orthonormal basis of the current face of the PSD cone: the feasible set is
// known to lie in { B Z B^T : Z PSD }.
struct FaceRestriction {
    OrthoBasis basis;

    FaceRestriction() = default;
    explicit FaceRestriction(OrthoBasis b) : basis(std::move(b)) {}
    static FaceRestriction full(int n) { return FaceRestriction(OrthoBasis::full(n)); }
    int dim() const { return basis.dim(); }
};

struct InteriorPoint {
    SymMatrix x;              // n x n, feasible, positive definite on the face
    double min_eig_on_face = 0.0;
};

struct DualCertificate {
    StressVector omega;       // properly signed, Omega PSD and nonzero on the face
    double objective = 0.0;   // <= obj tolerance
};

struct Infeasible {
    StressVector omega;       // same conditions with objective < -infeas tolerance
    double objective = 0.0;
};

using OracleOutcome = std::variant<InteriorPoint, DualCertificate, Infeasible>;

// Decides the theorem-of-alternatives for the face-restricted instance: either
// a feasible X positive definite on the face, or a reducing certificate, or an
// infeasibility certificate. Throws SolverStall when no outcome verifies.
OracleOutcome feasibility_oracle(const SignedCompletionInstance& inst,
                                 const FaceRestriction& face, const RunConfig& cfg = {});

// Auxiliary probe: the largest uniform slack the given inequality edge can have
// over the face-restricted feasible set; slack zero pins the edge and the dual
// certificate supported on it is returned.
struct TightnessProbe {
    bool tight = false;
    double slack = 0.0;
    StressVector certificate; // populated when tight
};

TightnessProbe probe_edge_tightness(const SignedCompletionInstance& inst,
                                    const FaceRestriction& face, int edge_index,
                                    const RunConfig& cfg = {});

} // namespace sdcomp

#endif
