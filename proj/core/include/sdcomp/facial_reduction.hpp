#ifndef SDCOMP_FACIAL_REDUCTION_HPP
#define SDCOMP_FACIAL_REDUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "sdcomp/oracle.hpp"

namespace sdcomp {

// Ordered dual certificates with the face chain they carve out. Stages
// produced by the reduction loop shrink the face strictly; stages appended by
// tightness augmentation vanish on the final face and leave it unchanged.
struct NestedPSDCertificate {
    int n = 0;
    std::vector<StressVector> stages;
    std::vector<OrthoBasis> faces; // faces[0] = full space, faces[j] after stage j

    int stage_count() const { return static_cast<int>(stages.size()); }
    int rank() const { return faces.empty() ? 0 : n - faces.back().dim(); }
};

struct FRResult {
    NestedPSDCertificate certificate;
    SymMatrix max_rank_solution; // meaningful when feasible
    int sd_upper = 0;            // reducing stage count
    bool feasible = true;
    std::optional<int> infeasible_stage;
    StressVector infeasible_certificate;
    std::vector<double> stage_objectives;
};

struct InfeasibleError : Error {
    FRResult result;
    InfeasibleError(std::string msg, FRResult r)
        : Error(std::move(msg)), result(std::move(r)) {}
};

// The reduction loop: call the oracle, split off the nullspace of the returned
// certificate, repeat until an interior point or an infeasibility certificate.
FRResult facial_reduction(const SignedCompletionInstance& inst, const RunConfig& cfg = {});

// feasible instances only; throws InfeasibleError carrying the partial chain
SymMatrix max_rank_solution(const SignedCompletionInstance& inst, const RunConfig& cfg = {});

// Per-condition verification, independent of the reduction loop. The face
// chain is rebuilt from the stage matrices alone.
struct CertReport {
    bool c1 = true; // proper signs
    bool c2 = true; // nested PSD
    bool c3 = true; // nonpositive stage objectives
    std::optional<bool> c4; // rank complementarity, when a candidate X* is given
    std::vector<int> face_dims; // rebuilt chain dims, V^0 .. V^k
    std::string detail;

    bool all_pass() const { return c1 && c2 && c3 && (!c4 || *c4); }
};

CertReport verify_certificate(const SignedCompletionInstance& inst,
                              const NestedPSDCertificate& cert,
                              const std::optional<SymMatrix>& x_star = std::nullopt,
                              const RunConfig& cfg = {});

struct SdResult {
    int value = 0;
    enum class Kind { exact, upper_bound } kind = Kind::exact;
};

// Greedy stage count; exact for 0 or 1 stages, otherwise exact only when the
// caller supplies a certified lower bound that matches.
SdResult singularity_degree(const SignedCompletionInstance& inst, const RunConfig& cfg = {},
                            std::optional<int> certified_lower = std::nullopt);

// Enforce the support condition: every inequality edge that is tight for all
// feasible solutions enters some stage's support. Probes each unsupported
// inequality edge on the final face and appends one combined stage when any
// probe pins an edge. Equality constraints are always tight and count as
// covered.
NestedPSDCertificate augment_tightness(const SignedCompletionInstance& inst,
                                       const FRResult& fr, const RunConfig& cfg = {});

// indices of edges certified tight for the whole feasible set (support of the
// augmented certificate plus all equality edges)
std::vector<int> tight_edge_set(const SignedCompletionInstance& inst,
                                const NestedPSDCertificate& cert, const RunConfig& cfg = {});

// Uniqueness test: over symmetric S of interior-point rank d, the system
// p_u^T S p_v = 0 for diagonals, equality edges, and supported edges has only
// the zero solution.
bool check_nondegeneracy(const SignedCompletionInstance& inst,
                         const NestedPSDCertificate& cert, const SymMatrix& x_star,
                         const RunConfig& cfg = {});

// Glue certificates of two pieces along a shared clique: stages are zero
// padded to equal length and summed through the vertex maps.
struct CombinedInstance {
    SignedCompletionInstance instance;
    NestedPSDCertificate certificate;
};

CombinedInstance combine_clique_sum(const SignedCompletionInstance& a,
                                    const NestedPSDCertificate& cert_a,
                                    const SignedCompletionInstance& b,
                                    const NestedPSDCertificate& cert_b,
                                    const std::vector<int>& map_a,
                                    const std::vector<int>& map_b, int n_combined,
                                    const RunConfig& cfg = {});

// certificate files: {"stages":[{"vertex":[...],"edges":[{"u","v","kind","val"}]}],
//                     "face_dims":[...]}
std::string certificate_to_json(const SignedCompletionInstance& inst,
                                const NestedPSDCertificate& cert);
NestedPSDCertificate parse_certificate(const SignedCompletionInstance& inst,
                                       const std::string& json_text, const RunConfig& cfg = {});
void save_certificate(const SignedCompletionInstance& inst, const NestedPSDCertificate& cert,
                      const std::string& path);
NestedPSDCertificate load_certificate(const SignedCompletionInstance& inst,
                                      const std::string& path, const RunConfig& cfg = {});

// face chain rebuilt from the stage matrices (V^0 = full space)
std::vector<OrthoBasis> rebuild_faces(const SignedCompletionInstance& inst,
                                      const std::vector<StressVector>& stages,
                                      const RunConfig& cfg = {});

} // namespace sdcomp

#endif
