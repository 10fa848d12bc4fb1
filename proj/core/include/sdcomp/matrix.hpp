#ifndef SDCOMP_MATRIX_HPP
#define SDCOMP_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "sdcomp/errors.hpp"

namespace sdcomp {

// Dense row-major rectangular matrix. Small sizes only (n <= ~100).
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    static Matrix identity(int n);

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator*(double s) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;

    std::vector<double> col(int j) const;
    void set_col(int j, const std::vector<double>& v);

    double max_abs() const;
    bool all_finite() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// Symmetric matrix with the upper triangle authoritative; writes mirror both halves.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n, double fill = 0.0);

    int size() const { return n_; }

    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, double v) {
        a_[static_cast<size_t>(i) * n_ + j] = v;
        a_[static_cast<size_t>(j) * n_ + i] = v;
    }
    void add(int i, int j, double v) {
        if (i == j) {
            a_[static_cast<size_t>(i) * n_ + i] += v;
        } else {
            a_[static_cast<size_t>(i) * n_ + j] += v;
            a_[static_cast<size_t>(j) * n_ + i] += v;
        }
    }

    static SymMatrix identity(int n);
    // symmetrizes (A + A^T)/2; rejects non-finite entries
    static SymMatrix from_matrix(const Matrix& m);

    Matrix to_matrix() const;

    double max_abs() const;
    bool all_finite() const;
    double trace() const;

    SymMatrix operator+(const SymMatrix& rhs) const;
    SymMatrix operator-(const SymMatrix& rhs) const;
    SymMatrix operator*(double s) const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

double dot(const SymMatrix& a, const SymMatrix& b); // trace inner product
std::vector<double> mat_vec(const SymMatrix& m, const std::vector<double>& x);
double quad_form(const SymMatrix& m, const std::vector<double>& x); // x^T M x

// Orthonormal columns spanning a subspace of R^n.
struct OrthoBasis {
    int n = 0;
    Matrix cols; // n x r

    OrthoBasis() = default;
    OrthoBasis(int ambient, Matrix c);

    int dim() const { return cols.cols(); }
    static OrthoBasis full(int n);  // identity basis
    static OrthoBasis empty(int n); // r = 0

    // largest pairwise deviation from orthonormality
    double orthonormality_defect() const;

    // map coefficients in the subspace back to ambient coordinates
    std::vector<double> lift(const std::vector<double>& coeffs) const;
};

// B^T M B, the compression of M onto the subspace
SymMatrix restrict_to(const SymMatrix& m, const OrthoBasis& b);
// B Z B^T, the expansion of a subspace matrix back to ambient coordinates
SymMatrix expand_from(const SymMatrix& z, const OrthoBasis& b);
// composition of nested bases: columns of (B * inner)
OrthoBasis compose(const OrthoBasis& b, const OrthoBasis& inner);

} // namespace sdcomp

#endif
