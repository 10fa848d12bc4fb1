#include "sdcomp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sdcomp {

namespace {

double off_diag_norm(const SymMatrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.size(); ++p)
        for (int q = p + 1; q < a.size(); ++q) s += a(p, q) * a(p, q);
    return std::sqrt(2.0 * s);
}

} // namespace

EigSym eig_sym(const SymMatrix& m) {
    if (!m.all_finite()) throw InvalidMatrix("eig_sym: non-finite entries");
    const int n = m.size();
    SymMatrix a = m;
    Matrix q = Matrix::identity(n);

    const double scale = std::max(1.0, m.max_abs());
    const double stop = 1e-15 * scale * n;
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diag_norm(a) <= stop) break;
        for (int p = 0; p < n; ++p) {
            for (int r = p + 1; r < n; ++r) {
                double apq = a(p, r);
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = (a(r, r) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);

                double app = a(p, p), arr = a(r, r);
                a.set(p, p, app - t * apq);
                a.set(r, r, arr + t * apq);
                a.set(p, r, 0.0);
                for (int k = 0; k < n; ++k) {
                    if (k != p && k != r) {
                        double akp = a(k, p), akr = a(k, r);
                        a.set(k, p, akp - s * (akr + tau * akp));
                        a.set(k, r, akr + s * (akp - tau * akr));
                    }
                    double qkp = q(k, p), qkr = q(k, r);
                    q(k, p) = qkp - s * (qkr + tau * qkp);
                    q(k, r) = qkr + s * (qkp - tau * qkr);
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

    EigSym out;
    out.values.resize(n);
    Matrix vecs(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (int i = 0; i < n; ++i) vecs(i, j) = q(i, order[j]);
    }
    out.vectors = OrthoBasis(n, std::move(vecs));
    return out;
}

int numeric_rank(const SymMatrix& m, double tol) {
    if (m.size() == 0) return 0;
    auto eig = eig_sym(m);
    double lmax = 0.0;
    for (double v : eig.values) lmax = std::max(lmax, std::fabs(v));
    double thr = tol * std::max(1.0, lmax);
    int rank = 0;
    for (double v : eig.values)
        if (std::fabs(v) > thr) ++rank;
    return rank;
}

PsdCheck psd_on_subspace(const SymMatrix& m, const OrthoBasis& b, double tol) {
    if (m.size() != b.n) throw InvalidInput("psd_on_subspace: dimension mismatch");
    PsdCheck out;
    if (b.dim() == 0) return out; // vacuously PSD
    SymMatrix r = restrict_to(m, b);
    auto eig = eig_sym(r);
    out.lambda_min = eig.values.front();
    if (out.lambda_min < -tol) {
        out.psd = false;
        out.witness = b.lift(eig.vectors.cols.col(0));
    }
    return out;
}

OrthoBasis nullspace_basis(const SymMatrix& m, double tol) {
    auto eig = eig_sym(m);
    double lmax = 0.0;
    for (double v : eig.values) lmax = std::max(lmax, std::fabs(v));
    double thr = tol * std::max(1.0, lmax);
    std::vector<int> keep;
    for (int j = 0; j < m.size(); ++j)
        if (std::fabs(eig.values[j]) <= thr) keep.push_back(j);
    Matrix cols(m.size(), static_cast<int>(keep.size()));
    for (int jj = 0; jj < static_cast<int>(keep.size()); ++jj)
        cols.set_col(jj, eig.vectors.cols.col(keep[jj]));
    return OrthoBasis(m.size(), std::move(cols));
}

Matrix gram_factor(const SymMatrix& x, int r, double psd_tol, double rank_tol) {
    auto eig = eig_sym(x);
    double lmax = eig.values.empty() ? 0.0 : std::max(0.0, eig.values.back());
    if (!eig.values.empty() && eig.values.front() < -psd_tol * std::max(1.0, lmax))
        throw NotPSD("gram_factor: matrix has a negative eigenvalue");
    if (numeric_rank(x, rank_tol) != r)
        throw InvalidInput("gram_factor: numeric rank does not match requested rank");
    const int n = x.size();
    Matrix p(r, n);
    // top r eigenvalues are the last r in ascending order
    for (int k = 0; k < r; ++k) {
        int j = n - 1 - k;
        double lam = std::max(eig.values[j], 0.0);
        double s = std::sqrt(lam);
        for (int i = 0; i < n; ++i) p(k, i) = s * eig.vectors.cols(i, j);
    }
    return p;
}

OrthoBasis orthonormalize(int ambient, const std::vector<std::vector<double>>& vecs,
                          double drop_tol) {
    std::vector<std::vector<double>> basis;
    for (const auto& v0 : vecs) {
        if (static_cast<int>(v0.size()) != ambient)
            throw InvalidInput("orthonormalize: vector length mismatch");
        std::vector<double> v = v0;
        double norm0 = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (norm0 == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : basis) {
                double proj = std::inner_product(v.begin(), v.end(), u.begin(), 0.0);
                for (int i = 0; i < ambient; ++i) v[i] -= proj * u[i];
            }
        }
        double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (norm <= drop_tol * std::max(1.0, norm0)) continue; // dependent, drop
        for (auto& x : v) x /= norm;
        basis.push_back(std::move(v));
    }
    Matrix cols(ambient, static_cast<int>(basis.size()));
    for (int j = 0; j < static_cast<int>(basis.size()); ++j) cols.set_col(j, basis[j]);
    return OrthoBasis(ambient, std::move(cols));
}

OrthoBasis orthogonal_complement(int ambient, const std::vector<std::vector<double>>& vecs) {
    OrthoBasis span = orthonormalize(ambient, vecs);
    // project out span from the standard basis, then orthonormalize what is left
    std::vector<std::vector<double>> residuals;
    for (int i = 0; i < ambient; ++i) {
        std::vector<double> e(ambient, 0.0);
        e[i] = 1.0;
        for (int j = 0; j < span.dim(); ++j) {
            auto u = span.cols.col(j);
            double proj = std::inner_product(e.begin(), e.end(), u.begin(), 0.0);
            for (int k = 0; k < ambient; ++k) e[k] -= proj * u[k];
        }
        residuals.push_back(std::move(e));
    }
    OrthoBasis comp = orthonormalize(ambient, residuals, 1e-8);
    // dimensions must add up; drop_tol above is loose enough for unit vectors
    if (comp.dim() + span.dim() != ambient)
        throw NumericalError("orthogonal_complement: dimension bookkeeping failed");
    return comp;
}

std::optional<Matrix> cholesky(const SymMatrix& a) {
    const int n = a.size();
    Matrix l(n, n);
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= 0.0 || !std::isfinite(d)) return std::nullopt;
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& b) {
    const int n = l.rows();
    if (static_cast<int>(b.size()) != n) throw InvalidInput("cholesky_solve: size mismatch");
    std::vector<double> y(n), x(n);
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
        x[i] = s / l(i, i);
    }
    return x;
}

KernelResult kernel_of(const Matrix& a, double tol) {
    const int cols = a.cols();
    Matrix ata = a.transposed() * a;
    SymMatrix g = SymMatrix::from_matrix(ata);
    auto eig = eig_sym(g);
    double smax = 0.0;
    for (double v : eig.values) smax = std::max(smax, std::sqrt(std::max(v, 0.0)));
    double thr = tol * std::max(1.0, smax);
    KernelResult out;
    for (int j = 0; j < cols; ++j) {
        double sv = std::sqrt(std::max(eig.values[j], 0.0));
        if (sv > thr)
            ++out.rank;
        else
            out.kernel.push_back(eig.vectors.cols.col(j));
    }
    return out;
}

} // namespace sdcomp
