#include "sdcomp/stress.hpp"

#include <cmath>

namespace sdcomp {

SymMatrix StressVector::to_matrix(const SignedCompletionInstance& inst) const {
    const int n = inst.vertex_count();
    if (static_cast<int>(vertex.size()) != n ||
        static_cast<int>(edge.size()) != inst.edge_count())
        throw InvalidInput("StressVector::to_matrix: size mismatch");
    SymMatrix m(n);
    for (int v = 0; v < n; ++v) m.set(v, v, vertex[v]);
    for (int i = 0; i < inst.edge_count(); ++i) {
        const auto& e = inst.edges()[i];
        m.add(e.u, e.v, edge[i] / 2.0);
    }
    return m;
}

double StressVector::objective(const SignedCompletionInstance& inst) const {
    double s = 0.0;
    for (double v : vertex) s += v;
    for (int i = 0; i < inst.edge_count(); ++i) s += edge[i] * inst.edges()[i].c;
    return s;
}

double StressVector::max_abs() const {
    double m = 0.0;
    for (double v : vertex) m = std::max(m, std::fabs(v));
    for (double v : edge) m = std::max(m, std::fabs(v));
    return m;
}

std::vector<int> StressVector::edge_support(double support_tol) const {
    double thr = support_tol * std::max(1.0, max_abs());
    std::vector<int> out;
    for (size_t i = 0; i < edge.size(); ++i)
        if (std::fabs(edge[i]) > thr) out.push_back(static_cast<int>(i));
    return out;
}

bool StressVector::edge_in_support(int idx, double support_tol) const {
    double thr = support_tol * std::max(1.0, max_abs());
    return std::fabs(edge[idx]) > thr;
}

StressVector StressVector::operator+(const StressVector& rhs) const {
    if (vertex.size() != rhs.vertex.size() || edge.size() != rhs.edge.size())
        throw InvalidInput("StressVector add: size mismatch");
    StressVector out = *this;
    for (size_t i = 0; i < vertex.size(); ++i) out.vertex[i] += rhs.vertex[i];
    for (size_t i = 0; i < edge.size(); ++i) out.edge[i] += rhs.edge[i];
    return out;
}

StressVector StressVector::operator*(double s) const {
    StressVector out = *this;
    for (auto& v : out.vertex) v *= s;
    for (auto& v : out.edge) v *= s;
    return out;
}

} // namespace sdcomp
