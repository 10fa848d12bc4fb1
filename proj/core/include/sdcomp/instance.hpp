#ifndef SDCOMP_INSTANCE_HPP
#define SDCOMP_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sdcomp/matrix.hpp"
#include "sdcomp/signed_graph.hpp"

namespace sdcomp {

enum class ConstraintKind { eq, ge, le };

const char* kind_name(ConstraintKind k);
ConstraintKind kind_from_name(const std::string& s);

struct EdgeConstraint {
    int u = 0, v = 0; // u < v after validation
    ConstraintKind kind = ConstraintKind::eq;
    double c = 0.0;
};

// The completion problem: X PSD, unit diagonal, X[u,v] {=,>=,<=} c per edge.
// ge edges play the even role, le edges the odd role; eq edges act as a
// parallel even/odd pair when signed semantics are needed.
class SignedCompletionInstance {
public:
    SignedCompletionInstance() = default;
    SignedCompletionInstance(int n, std::vector<EdgeConstraint> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<EdgeConstraint>& edges() const { return edges_; }

    SignedGraph signed_graph() const;
    Graph underlying() const;

    std::optional<int> edge_index(int u, int v, ConstraintKind kind) const;

    // feasibility of a concrete matrix against the linear constraints
    double max_violation(const SymMatrix& x) const;

private:
    int n_ = 0;
    std::vector<EdgeConstraint> edges_;
};

SignedCompletionInstance load_instance(const std::string& path);
SignedCompletionInstance parse_instance(const std::string& json_text);
std::string instance_to_json(const SignedCompletionInstance& inst);
void save_instance(const SignedCompletionInstance& inst, const std::string& path);

// Degenerate-entry elimination: forced entries (c = 1 on ge/eq, c = -1 on
// le/eq) are removed by resigning across a cut and contracting, iterated to a
// fixpoint. An odd cycle of forced entries has no PSD completion and raises
// MetricInfeasible.
struct PreprocessResult {
    SignedCompletionInstance reduced;
    std::vector<int> vertex_map;  // original vertex -> reduced vertex
    std::vector<int> resign_set;  // original vertices whose sign was flipped
    bool extra_stage = false;     // true iff at least one contraction happened
};

PreprocessResult preprocess_degenerate(const SignedCompletionInstance& inst);

// un-contract a solution of the reduced instance into one of the original
SymMatrix lift_solution(const PreprocessResult& pre, const SymMatrix& reduced_x);

// glue two instances along a shared clique; vertex maps send local indices to
// combined ones. Shared pairs must agree on kind and weight.
SignedCompletionInstance clique_sum_instance(const SignedCompletionInstance& a,
                                             const SignedCompletionInstance& b,
                                             const std::vector<int>& map_a,
                                             const std::vector<int>& map_b, int n_combined);

} // namespace sdcomp

#endif
