#include "sdcomp/matrix.hpp"

#include <cmath>

namespace sdcomp {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw InvalidInput("Matrix: negative dimensions");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvalidInput("Matrix multiply: dimension mismatch");
    Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

Matrix Matrix::operator*(double s) const {
    Matrix out = *this;
    for (auto& v : out.a_) v *= s;
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidInput("Matrix add: shape mismatch");
    Matrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidInput("Matrix sub: shape mismatch");
    Matrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
    return out;
}

std::vector<double> Matrix::col(int j) const {
    std::vector<double> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_col(int j, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != rows_) throw InvalidInput("set_col: length mismatch");
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
}

bool Matrix::all_finite() const {
    for (double v : a_)
        if (!std::isfinite(v)) return false;
    return true;
}

SymMatrix::SymMatrix(int n, double fill) : n_(n), a_(static_cast<size_t>(n) * n, fill) {
    if (n < 0) throw InvalidInput("SymMatrix: negative dimension");
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::from_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidMatrix("from_matrix: not square");
    if (!m.all_finite()) throw InvalidMatrix("from_matrix: non-finite entries");
    SymMatrix s(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    return s;
}

Matrix SymMatrix::to_matrix() const {
    Matrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
}

bool SymMatrix::all_finite() const {
    for (double v : a_)
        if (!std::isfinite(v)) return false;
    return true;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

SymMatrix SymMatrix::operator+(const SymMatrix& rhs) const {
    if (n_ != rhs.n_) throw InvalidInput("SymMatrix add: size mismatch");
    SymMatrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
    return out;
}

SymMatrix SymMatrix::operator-(const SymMatrix& rhs) const {
    if (n_ != rhs.n_) throw InvalidInput("SymMatrix sub: size mismatch");
    SymMatrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
    return out;
}

SymMatrix SymMatrix::operator*(double s) const {
    SymMatrix out = *this;
    for (auto& v : out.a_) v *= s;
    return out;
}

double dot(const SymMatrix& a, const SymMatrix& b) {
    if (a.size() != b.size()) throw InvalidInput("dot: size mismatch");
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) s += a(i, j) * b(i, j);
    return s;
}

std::vector<double> mat_vec(const SymMatrix& m, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != m.size()) throw InvalidInput("mat_vec: size mismatch");
    std::vector<double> y(x.size(), 0.0);
    for (int i = 0; i < m.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < m.size(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double quad_form(const SymMatrix& m, const std::vector<double>& x) {
    auto y = mat_vec(m, x);
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

OrthoBasis::OrthoBasis(int ambient, Matrix c) : n(ambient), cols(std::move(c)) {
    if (cols.rows() != n) throw InvalidInput("OrthoBasis: column length != ambient dimension");
    if (cols.cols() > n) throw InvalidInput("OrthoBasis: more columns than ambient dimension");
}

OrthoBasis OrthoBasis::full(int n) { return OrthoBasis(n, Matrix::identity(n)); }

OrthoBasis OrthoBasis::empty(int n) { return OrthoBasis(n, Matrix(n, 0)); }

double OrthoBasis::orthonormality_defect() const {
    double worst = 0.0;
    for (int a = 0; a < dim(); ++a)
        for (int b = a; b < dim(); ++b) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += cols(i, a) * cols(i, b);
            worst = std::max(worst, std::fabs(s - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

std::vector<double> OrthoBasis::lift(const std::vector<double>& coeffs) const {
    if (static_cast<int>(coeffs.size()) != dim()) throw InvalidInput("lift: coefficient length");
    std::vector<double> x(n, 0.0);
    for (int j = 0; j < dim(); ++j)
        for (int i = 0; i < n; ++i) x[i] += cols(i, j) * coeffs[j];
    return x;
}

SymMatrix restrict_to(const SymMatrix& m, const OrthoBasis& b) {
    if (m.size() != b.n) throw InvalidInput("restrict_to: dimension mismatch");
    Matrix mb = m.to_matrix() * b.cols;          // n x r
    Matrix r = b.cols.transposed() * mb;         // r x r
    return SymMatrix::from_matrix(r);
}

SymMatrix expand_from(const SymMatrix& z, const OrthoBasis& b) {
    if (z.size() != b.dim()) throw InvalidInput("expand_from: dimension mismatch");
    Matrix bz = b.cols * z.to_matrix();          // n x r
    Matrix full = bz * b.cols.transposed();      // n x n
    return SymMatrix::from_matrix(full);
}

OrthoBasis compose(const OrthoBasis& b, const OrthoBasis& inner) {
    if (inner.n != b.dim()) throw InvalidInput("compose: inner basis lives in the wrong space");
    return OrthoBasis(b.n, b.cols * inner.cols);
}

} // namespace sdcomp
