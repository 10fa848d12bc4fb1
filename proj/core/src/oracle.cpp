#include "sdcomp/oracle.hpp"

#include <cmath>

namespace sdcomp {

namespace {

// B^T E_vv B as a rank-one outer product of the v-th row of B
SymMatrix restrict_diag(const OrthoBasis& b, int v) {
    const int r = b.dim();
    SymMatrix g(r);
    for (int p = 0; p < r; ++p)
        for (int q = p; q < r; ++q) g.set(p, q, b.cols(v, p) * b.cols(v, q));
    return g;
}

// B^T E_uv B with E_uv = (e_u e_v^T + e_v e_u^T)/2
SymMatrix restrict_offdiag(const OrthoBasis& b, int u, int v) {
    const int r = b.dim();
    SymMatrix g(r);
    for (int p = 0; p < r; ++p)
        for (int q = p; q < r; ++q)
            g.set(p, q, 0.5 * (b.cols(u, p) * b.cols(v, q) + b.cols(v, p) * b.cols(u, q)));
    return g;
}

struct DualSetup {
    ConicProblem prob;
    // index layout: [0, n) vertex multipliers, [n, n+m) edge multipliers
    int n = 0, m = 0;
};

// Dual program over the face: minimize the dual objective subject to
// B^T Omega B PSD and proper signs; internal edge variables are nonnegative
// with the sign folded into the constraint matrix.
DualSetup build_dual(const SignedCompletionInstance& inst, const OrthoBasis& basis) {
    DualSetup setup;
    const int n = inst.vertex_count();
    const int m = inst.edge_count();
    setup.n = n;
    setup.m = m;
    ConicProblem& p = setup.prob;
    p.r = basis.dim();
    for (int v = 0; v < n; ++v) {
        p.mats.push_back(restrict_diag(basis, v));
        p.obj.push_back(1.0);
        p.nonneg.push_back(false);
    }
    for (int i = 0; i < m; ++i) {
        const auto& e = inst.edges()[i];
        SymMatrix g = restrict_offdiag(basis, e.u, e.v);
        switch (e.kind) {
            case ConstraintKind::eq:
                p.mats.push_back(g);
                p.obj.push_back(e.c);
                p.nonneg.push_back(false);
                break;
            case ConstraintKind::ge: // omega(e) = -z, z >= 0
                p.mats.push_back(g * -1.0);
                p.obj.push_back(-e.c);
                p.nonneg.push_back(true);
                break;
            case ConstraintKind::le: // omega(e) = +z, z >= 0
                p.mats.push_back(g);
                p.obj.push_back(e.c);
                p.nonneg.push_back(true);
                break;
        }
    }
    return setup;
}

// strictly feasible start: identity from the vertex block plus a small edge bump
std::vector<double> interior_start(const DualSetup& setup) {
    const int total = setup.prob.size();
    std::vector<double> y(total, 0.0);
    for (int v = 0; v < setup.n; ++v) y[v] = 1.0;
    double eps = 0.01 / std::max(1, setup.m);
    for (int i = setup.n; i < total; ++i) y[i] = eps;
    return y;
}

void normalize_start(const ConicProblem& p, std::vector<double>& y) {
    double t = 0.0;
    for (int i = 0; i < p.size(); ++i) t += p.norm[i] * y[i];
    if (t <= 0) throw NumericalError("oracle: start point has nonpositive normalization");
    for (auto& v : y) v /= t;
}

StressVector extract_stress(const SignedCompletionInstance& inst,
                            const std::vector<double>& y) {
    const int n = inst.vertex_count();
    StressVector w(n, inst.edge_count());
    for (int v = 0; v < n; ++v) w.vertex[v] = y[v];
    for (int i = 0; i < inst.edge_count(); ++i) {
        double z = y[n + i];
        w.edge[i] = (inst.edges()[i].kind == ConstraintKind::ge) ? -z : z;
    }
    return w;
}

} // namespace

OracleOutcome feasibility_oracle(const SignedCompletionInstance& inst,
                                 const FaceRestriction& face, const RunConfig& cfg) {
    cfg.validate();
    const int n = inst.vertex_count();
    if (face.basis.n != n) throw InvalidInput("feasibility_oracle: face dimension mismatch");
    if (face.basis.orthonormality_defect() > cfg.tol.ortho * 100)
        throw InvalidInput("feasibility_oracle: face basis not orthonormal");

    if (face.dim() == 0) {
        // the zero matrix is the only candidate and the unit diagonal rules it out
        StressVector w(n, inst.edge_count());
        for (int v = 0; v < n; ++v) w.vertex[v] = -1.0 / n;
        return Infeasible{w, -1.0};
    }

    DualSetup setup = build_dual(inst, face.basis);
    ConicProblem& p = setup.prob;
    // normalization: restricted trace of Omega equals one
    p.norm.resize(p.size());
    for (int i = 0; i < p.size(); ++i) p.norm[i] = p.mats[i].trace();
    p.start = interior_start(setup);
    normalize_start(p, p.start);

    ConicSolution sol = solve_conic(p, cfg, -0.05);

    if (sol.objective < -cfg.tol.infeas)
        return Infeasible{extract_stress(inst, sol.y), sol.objective};

    double t = -sol.lambda;
    if (t > cfg.tol.pd) {
        // primal recovery X~ = mu S^{-1} - lambda I, expanded to ambient space
        auto l = cholesky(sol.s);
        if (l) {
            const int r = face.dim();
            SymMatrix xt(r);
            for (int j = 0; j < r; ++j) {
                std::vector<double> e(r, 0.0);
                e[j] = 1.0;
                auto col = cholesky_solve(*l, e);
                for (int i = 0; i < r; ++i) xt.set(i, j, sol.mu * col[i]);
            }
            // symmetrize drift from the columnwise solve
            xt = SymMatrix::from_matrix(xt.to_matrix());
            for (int i = 0; i < r; ++i) xt.set(i, i, xt(i, i) + t);
            SymMatrix x = expand_from(xt, face.basis);
            if (inst.max_violation(x) <= cfg.tol.feas) {
                auto eig = eig_sym(xt);
                return InteriorPoint{x, eig.values.front()};
            }
        }
    }

    if (sol.objective <= cfg.tol.obj && sol.converged)
        return DualCertificate{extract_stress(inst, sol.y), sol.objective};

    throw SolverStall("feasibility_oracle: no outcome verified (obj=" +
                      std::to_string(sol.objective) + ", t=" + std::to_string(t) +
                      ", gap=" + std::to_string(sol.gap) + ", iters=" +
                      std::to_string(sol.iterations) + ")");
}

TightnessProbe probe_edge_tightness(const SignedCompletionInstance& inst,
                                    const FaceRestriction& face, int edge_index,
                                    const RunConfig& cfg) {
    cfg.validate();
    if (edge_index < 0 || edge_index >= inst.edge_count())
        throw InvalidInput("probe_edge_tightness: bad edge index");
    const auto& e = inst.edges()[edge_index];
    if (e.kind == ConstraintKind::eq)
        throw InvalidInput("probe_edge_tightness: equality edges are always tight");

    DualSetup setup = build_dual(inst, face.basis);
    ConicProblem& p = setup.prob;
    // normalization pins the probed edge multiplier to one
    p.norm.assign(p.size(), 0.0);
    p.norm[setup.n + edge_index] = 1.0;
    p.start = interior_start(setup);
    p.start[setup.n + edge_index] = 1.0;
    // rebalance the vertex block so S stays comfortably positive definite
    for (int v = 0; v < setup.n; ++v) p.start[v] = 4.0;

    ConicSolution sol = solve_conic(p, cfg);

    TightnessProbe out;
    // slack of the probed edge at the recovered primal point mu S^{-1}
    auto l = cholesky(sol.s);
    if (!l) throw NumericalError("probe_edge_tightness: singular dual matrix");
    const int r = face.dim();
    SymMatrix xt(r);
    for (int j = 0; j < r; ++j) {
        std::vector<double> ecol(r, 0.0);
        ecol[j] = 1.0;
        auto col = cholesky_solve(*l, ecol);
        for (int i = 0; i < r; ++i) xt.set(i, j, sol.mu * col[i]);
    }
    xt = SymMatrix::from_matrix(xt.to_matrix());
    SymMatrix g = restrict_offdiag(face.basis, e.u, e.v);
    double entry = dot(g, xt);
    out.slack = (e.kind == ConstraintKind::ge) ? entry - e.c : e.c - entry;

    if (sol.objective <= cfg.tol.obj && sol.converged) {
        out.tight = true;
        out.certificate = extract_stress(inst, sol.y);
    } else if (out.slack <= cfg.tol.pd && !sol.converged) {
        throw SolverStall("probe_edge_tightness: inconclusive probe");
    }
    return out;
}

} // namespace sdcomp
