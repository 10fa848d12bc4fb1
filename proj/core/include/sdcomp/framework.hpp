#ifndef SDCOMP_FRAMEWORK_HPP
#define SDCOMP_FRAMEWORK_HPP

#include <map>
#include <string>
#include <vector>

#include "sdcomp/facial_reduction.hpp"
#include "sdcomp/instance.hpp"
#include "sdcomp/stress.hpp"

namespace sdcomp {

struct FrameworkEdge {
    int u = 0, v = 0;
    ConstraintKind kind = ConstraintKind::eq;
};

// Graph drawn on the unit sphere S^{d-1}; edge kinds give the tensegrity
// semantics (eq = bar, ge/le = signed constraints on the inner product).
struct SphericalFramework {
    int n = 0;
    int d = 0;
    std::vector<std::vector<double>> points; // n unit vectors in R^d
    std::vector<FrameworkEdge> edges;
    // construction parameters (angles etc.) kept for exact recomputation in tests
    std::map<std::string, double> params;

    void validate() const; // unit norms within 1e-10, edge sanity
    Graph graph() const;
};

// c(ij) = p(i).p(j); clamped into [-1,1] only when the overshoot is <= 1e-12
SignedCompletionInstance framework_to_instance(const SphericalFramework& f);

// max over vertices of | omega(v) p(v) + sum_{e=uv} omega(e) p(u) |
double equilibrium_residual(const SphericalFramework& f, const StressVector& w);

// same residual after projecting onto the orthogonal complement of
// span{ p(v) : v in stressed_set }
double projected_equilibrium_residual(const SphericalFramework& f, const StressVector& w,
                                      const std::vector<int>& stressed_set);

struct StagedStressReport {
    // cumulative stressed vertex sets, stage_sets[j] after stage j+1
    std::vector<std::vector<int>> stage_sets;
    std::vector<double> projected_residuals;   // stage j vs the set of stage j-1
    std::vector<int> first_stressed;           // per vertex; -1 when never stressed
    std::vector<int> stage1_zero_edges;        // edges with no stage-1 support
};

StagedStressReport staged_stress_analysis(const SphericalFramework& f,
                                          const NestedPSDCertificate& cert,
                                          const RunConfig& cfg = {});

// single PSD equilibrium stress of corank d plus the conic condition
bool verify_super_stable(const SphericalFramework& f, const StressVector& w,
                         const RunConfig& cfg = {});

// multi-stage universal rigidity certificate: proper signs, nested PSD,
// per-stage zero objective, total rank n-d, conic nondegeneracy
bool verify_universal_rigidity_certificate(const SphericalFramework& f,
                                           const NestedPSDCertificate& cert,
                                           const RunConfig& cfg = {});

// Lower bound on the stage count of any valid reduction sequence: propagates
// the forced-zero cascade per stage (projected equilibrium plus the PSD
// submatrix rule) and reports the first stage at which some target vertex can
// carry stress. Returns 0 when no claim can be made.
int stage_reachability_lower_bound(const SphericalFramework& f, const std::vector<int>& targets,
                                   const RunConfig& cfg = {});

std::string framework_to_json(const SphericalFramework& f);
SphericalFramework parse_framework(const std::string& json_text);
void save_framework(const SphericalFramework& f, const std::string& path);
SphericalFramework load_framework(const std::string& path);

} // namespace sdcomp

#endif
