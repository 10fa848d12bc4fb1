#ifndef SDCOMP_LINALG_HPP
#define SDCOMP_LINALG_HPP

#include <optional>
#include <vector>

#include "sdcomp/config.hpp"
#include "sdcomp/matrix.hpp"

namespace sdcomp {

// Eigendecomposition of a symmetric matrix. Eigenvalues ascending, the j-th
// column of `vectors` is the eigenvector of values[j].
struct EigSym {
    std::vector<double> values;
    OrthoBasis vectors;
};

// Cyclic Jacobi rotations; robust at the sizes used here (n <= ~100).
EigSym eig_sym(const SymMatrix& m);

// count of eigenvalues with |lambda| > tol * max(1, |lambda|_max)
int numeric_rank(const SymMatrix& m, double tol = Tolerances{}.rank);

struct PsdCheck {
    bool psd = true;
    double lambda_min = 0.0;              // smallest restricted eigenvalue (0 if basis empty)
    std::vector<double> witness;          // ambient x with x^T M x < 0, set when psd == false
};

// true iff lambda_min(B^T M B) >= -tol; witness eigenvector lifted on failure
PsdCheck psd_on_subspace(const SymMatrix& m, const OrthoBasis& b, double tol = Tolerances{}.psd);

// span of eigenvectors with |lambda| <= tol * max(1, |lambda|_max)
OrthoBasis nullspace_basis(const SymMatrix& m, double tol = Tolerances{}.rank);

// r x n factor P with P^T P ~= X; throws NotPSD / InvalidInput on rank mismatch
Matrix gram_factor(const SymMatrix& x, int r, double psd_tol = Tolerances{}.psd,
                   double rank_tol = Tolerances{}.rank);

// Modified Gram-Schmidt with a re-orthogonalization pass; columns below
// drop_tol of their original norm are discarded.
OrthoBasis orthonormalize(int ambient, const std::vector<std::vector<double>>& vecs,
                          double drop_tol = 1e-12);

// Orthonormal basis of the orthogonal complement of span(vecs) inside R^ambient.
OrthoBasis orthogonal_complement(int ambient, const std::vector<std::vector<double>>& vecs);

// Cholesky factor L (lower) with A = L L^T; nullopt when A is not positive definite.
std::optional<Matrix> cholesky(const SymMatrix& a);
// solve L L^T x = b given the Cholesky factor
std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& b);

// least-squares nullspace of a rectangular system: rank and kernel basis of A
// (rows x cols), via the eigendecomposition of A^T A. Tolerance is relative on
// singular values.
struct KernelResult {
    int rank = 0;
    std::vector<std::vector<double>> kernel; // each of length cols
};
KernelResult kernel_of(const Matrix& a, double tol = Tolerances{}.rank);

} // namespace sdcomp

#endif
