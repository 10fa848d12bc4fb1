#ifndef SDCOMP_STRESS_HPP
#define SDCOMP_STRESS_HPP

#include <vector>

#include "sdcomp/instance.hpp"
#include "sdcomp/matrix.hpp"

namespace sdcomp {

// Dual variable of the completion problem: one weight per vertex and one per
// instance edge. The matrix form puts omega(ij)/2 on the off-diagonal entries.
struct StressVector {
    std::vector<double> vertex;
    std::vector<double> edge; // aligned with SignedCompletionInstance::edges()

    StressVector() = default;
    StressVector(int n, int m) : vertex(n, 0.0), edge(m, 0.0) {}

    SymMatrix to_matrix(const SignedCompletionInstance& inst) const;

    // dual objective: sum of vertex weights plus weighted edge terms
    double objective(const SignedCompletionInstance& inst) const;

    double max_abs() const;

    // entries with |omega| > support_tol * max(1, |omega|_inf)
    std::vector<int> edge_support(double support_tol) const;
    bool edge_in_support(int idx, double support_tol) const;

    StressVector operator+(const StressVector& rhs) const;
    StressVector operator*(double s) const;
};

} // namespace sdcomp

#endif
