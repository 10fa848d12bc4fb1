#include "sdcomp/solver.hpp"

#include <cmath>
#include <limits>

namespace sdcomp {

namespace {

SymMatrix assemble(const ConicProblem& p, const std::vector<double>& y) {
    SymMatrix s(p.r);
    for (int i = 0; i < p.size(); ++i) {
        if (y[i] == 0.0) continue;
        for (int a = 0; a < p.r; ++a)
            for (int b = a; b < p.r; ++b) s.set(a, b, s(a, b) + y[i] * p.mats[i](a, b));
    }
    return s;
}

// columns of S^{-1}
Matrix invert_spd(const Matrix& chol_l, int r) {
    Matrix inv(r, r);
    for (int j = 0; j < r; ++j) {
        std::vector<double> e(r, 0.0);
        e[j] = 1.0;
        auto col = cholesky_solve(chol_l, e);
        inv.set_col(j, col);
    }
    return inv;
}

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// barrier value; +inf outside the cone
double barrier_value(const ConicProblem& p, const std::vector<double>& y, double mu,
                     bool& interior) {
    interior = false;
    for (int i = 0; i < p.size(); ++i)
        if (p.nonneg[i] && y[i] <= 0.0) return std::numeric_limits<double>::infinity();
    SymMatrix s = assemble(p, y);
    auto l = cholesky(s);
    if (!l) return std::numeric_limits<double>::infinity();
    interior = true;
    double logdet = 0.0;
    for (int i = 0; i < p.r; ++i) logdet += std::log((*l)(i, i));
    logdet *= 2.0;
    double val = dot_vec(p.obj, y) - mu * logdet;
    for (int i = 0; i < p.size(); ++i)
        if (p.nonneg[i]) val -= mu * std::log(y[i]);
    return val;
}

struct KktSolve {
    std::vector<double> dy;
    double lambda = 0.0;
    double decrement2 = 0.0;
    double residual = 0.0; // max_i |grad_i + lambda * tau_i|, the primal recovery error
    bool ok = false;
};

KktSolve newton_step(const ConicProblem& p, const std::vector<double>& y, double mu,
                     const Matrix& sinv) {
    const int m = p.size();
    KktSolve out;

    // gradient of the barrier (without the lambda term)
    std::vector<double> grad(m);
    for (int i = 0; i < m; ++i) {
        double h = 0.0;
        for (int a = 0; a < p.r; ++a)
            for (int b = 0; b < p.r; ++b) h += p.mats[i](a, b) * sinv(a, b);
        if (p.nonneg[i]) h += 1.0 / y[i];
        grad[i] = p.obj[i] - mu * h;
    }

    // Hessian: mu * (<Sinv G_i Sinv, G_j> + diag 1/y^2)
    std::vector<Matrix> u(m);
    for (int i = 0; i < m; ++i) u[i] = sinv * p.mats[i].to_matrix() * sinv;
    SymMatrix hess(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double s = 0.0;
            for (int a = 0; a < p.r; ++a)
                for (int b = 0; b < p.r; ++b) s += u[i](a, b) * p.mats[j](a, b);
            hess.set(i, j, mu * s);
        }
    for (int i = 0; i < m; ++i)
        if (p.nonneg[i]) hess.set(i, i, hess(i, i) + mu / (y[i] * y[i]));

    // factor with an escalating ridge if needed
    double ridge = 0.0;
    std::optional<Matrix> l;
    double scale = std::max(1.0, hess.trace() / std::max(1, m));
    for (int attempt = 0; attempt < 8; ++attempt) {
        SymMatrix h = hess;
        if (ridge > 0)
            for (int i = 0; i < m; ++i) h.set(i, i, h(i, i) + ridge);
        l = cholesky(h);
        if (l) break;
        ridge = (ridge == 0.0) ? 1e-13 * scale : ridge * 100.0;
    }
    if (!l) return out;

    auto hinv_grad = cholesky_solve(*l, grad);
    auto hinv_tau = cholesky_solve(*l, p.norm);
    double tt = dot_vec(p.norm, hinv_tau);
    if (std::fabs(tt) < 1e-300) return out;
    out.lambda = -dot_vec(p.norm, hinv_grad) / tt;

    out.dy.resize(m);
    for (int i = 0; i < m; ++i) out.dy[i] = -hinv_grad[i] - out.lambda * hinv_tau[i];
    out.decrement2 = -dot_vec(grad, out.dy); // tau . dy = 0, so this is dy^T H dy
    if (out.decrement2 < 0) out.decrement2 = 0;
    for (int i = 0; i < m; ++i)
        out.residual = std::max(out.residual, std::fabs(grad[i] + out.lambda * p.norm[i]));
    out.ok = true;
    return out;
}

// largest step keeping S(y + a dy) PD and nonneg coordinates positive
double max_step(const ConicProblem& p, const std::vector<double>& y,
                const std::vector<double>& dy, const Matrix& chol_l) {
    double alpha = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.size(); ++i)
        if (p.nonneg[i] && dy[i] < 0) alpha = std::min(alpha, -y[i] / dy[i]);

    SymMatrix ds = assemble(p, dy);
    // lambda_min of L^{-1} dS L^{-T}
    const int r = p.r;
    if (r > 0 && ds.max_abs() > 0) {
        Matrix w(r, r);
        // solve L W = dS, then L M^T = W^T  =>  M = L^{-1} dS L^{-T}
        for (int j = 0; j < r; ++j) {
            std::vector<double> col(r);
            for (int i = 0; i < r; ++i) col[i] = ds(i, j);
            // forward substitution
            for (int i = 0; i < r; ++i) {
                double s = col[i];
                for (int k = 0; k < i; ++k) s -= chol_l(i, k) * w(k, j);
                w(i, j) = s / chol_l(i, i);
            }
        }
        Matrix m(r, r);
        for (int j = 0; j < r; ++j) {
            for (int i = 0; i < r; ++i) {
                double s = w(j, i);
                for (int k = 0; k < i; ++k) s -= chol_l(i, k) * m(k, j);
                m(i, j) = s / chol_l(i, i);
            }
        }
        SymMatrix msym = SymMatrix::from_matrix(m);
        auto eig = eig_sym(msym);
        double lmin = eig.values.front();
        if (lmin < -1e-14) alpha = std::min(alpha, -1.0 / lmin);
    }
    return alpha;
}

} // namespace

ConicSolution solve_conic(const ConicProblem& prob, const RunConfig& cfg, double obj_floor,
                          const StopCheck& stop) {
    const int m = prob.size();
    if (m == 0 || prob.r < 0) throw InvalidInput("solve_conic: empty problem");
    if (static_cast<int>(prob.obj.size()) != m || static_cast<int>(prob.nonneg.size()) != m ||
        static_cast<int>(prob.norm.size()) != m || static_cast<int>(prob.start.size()) != m)
        throw InvalidInput("solve_conic: inconsistent problem arrays");

    int q = 0;
    for (bool b : prob.nonneg)
        if (b) ++q;
    const double gap_units = prob.r + q;

    ConicSolution sol;
    sol.y = prob.start;

    double mu = std::max(1.0, std::fabs(dot_vec(prob.obj, sol.y)));
    const double mu_final = cfg.gap_target / std::max(1.0, gap_units);
    int iters = 0;
    bool last_round = (mu <= mu_final);

    auto snapshot = [&](double residual, double lambda) {
        sol.s = assemble(prob, sol.y);
        sol.objective = dot_vec(prob.obj, sol.y);
        sol.lambda = lambda;
        sol.mu = mu;
        sol.gap = mu * gap_units;
        sol.iterations = iters;
        sol.grad_residual = residual;
    };

    while (true) {
        // center at the current mu, then take a few plain polishing steps to
        // drive the stationarity residual down while conditioning allows
        double last_residual = 1e100, last_lambda = 0.0;
        bool polishing = false;
        for (int inner = 0; inner < 60; ++inner) {
            if (iters >= cfg.max_iters) break;
            SymMatrix s = assemble(prob, sol.y);
            auto l = cholesky(s);
            if (!l) throw NumericalError("solve_conic: iterate left the cone");
            Matrix sinv = invert_spd(*l, prob.r);
            auto step = newton_step(prob, sol.y, mu, sinv);
            if (!step.ok) break;
            double delta_sc = std::sqrt(step.decrement2 / mu);
            if (polishing) {
                // stop once the residual stalls or is good enough
                if (step.residual <= 1e-10 || step.residual > 0.5 * last_residual) {
                    last_residual = std::min(last_residual, step.residual);
                    last_lambda = step.lambda;
                    break;
                }
            } else if (delta_sc <= 0.05) {
                polishing = true;
            }
            last_residual = step.residual;
            last_lambda = step.lambda;

            double amax = max_step(prob, sol.y, step.dy, *l);
            double alpha = std::min(1.0, cfg.step_frac * amax);
            std::vector<double> trial(m);

            if (delta_sc > 0.25) {
                // damped phase: backtrack on the barrier value
                bool interior = false;
                double f0 = barrier_value(prob, sol.y, mu, interior);
                int bt = 0;
                for (; bt < 40; ++bt) {
                    for (int i = 0; i < m; ++i) trial[i] = sol.y[i] + alpha * step.dy[i];
                    bool ok = false;
                    double f1 = barrier_value(prob, trial, mu, ok);
                    if (ok && f1 <= f0 - 0.1 * alpha * step.decrement2) break;
                    alpha *= 0.5;
                }
                if (bt == 40) break; // no measurable progress at this mu
            } else {
                // quadratic region: plain Newton, clipped to the cone boundary
                for (int i = 0; i < m; ++i) trial[i] = sol.y[i] + alpha * step.dy[i];
                double moved = 0.0;
                for (int i = 0; i < m; ++i)
                    moved = std::max(moved, std::fabs(trial[i] - sol.y[i]));
                if (moved == 0.0) break; // step below the floating floor
            }
            sol.y = trial;
            ++iters;

            if (dot_vec(prob.obj, sol.y) < obj_floor) {
                snapshot(last_residual, last_lambda);
                sol.objective_dived = true;
                return sol;
            }
        }

        snapshot(last_residual, last_lambda);
        if (stop && stop(sol)) {
            sol.stopped_by_check = true;
            sol.converged = true;
            return sol;
        }
        if (sol.objective < obj_floor) {
            sol.objective_dived = true;
            return sol;
        }
        if (last_round || iters >= cfg.max_iters) break;
        mu *= 0.2;
        if (mu <= mu_final) {
            mu = mu_final;
            last_round = true;
        }
    }

    sol.converged = last_round && iters < cfg.max_iters;
    return sol;
}

} // namespace sdcomp
