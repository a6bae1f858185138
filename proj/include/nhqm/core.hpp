#pragma once

// Dense complex vectors/matrices and the error taxonomy shared by the
// whole library. Everything is value-semantic and row-major; sizes stay
// at desk scale (N <= 16 or so) so no attempt is made at blocking.

#include <complex>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhqm {

using Complex = std::complex<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct SymmetryError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct DegenerateSpectrumError : Error { using Error::Error; };
struct SingularMatrixError : Error { using Error::Error; };
struct NotPositiveDefiniteError : Error { using Error::Error; };
struct IllConditionedBasisError : Error { using Error::Error; };
struct NormalizationError : Error { using Error::Error; };
struct NotFixedError : Error { using Error::Error; };
struct NotEigenpairError : Error { using Error::Error; };
struct ConstructionError : Error { using Error::Error; };
struct DegenerateParamError : Error { using Error::Error; };
struct NotBrokenRegimeError : Error { using Error::Error; };
struct RegimeError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

struct Tolerances {
    double eig = 1e-10;       // residuals of eigen/sqrt/identity checks
    double sym = 1e-12;       // Hermiticity of inputs
    double gap = 1e-8;        // minimal admissible eigenvalue separation
    double pd = 1e-12;        // positive-definiteness floor
    double cond_max = 1e12;   // basis conditioning ceiling
};

using Vector = std::vector<Complex>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw DimensionError("matrix data size does not match rows*cols");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Matrix zero(std::size_t n) { return Matrix(n, n); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const {
        Vector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_column(std::size_t j, const Vector& c) {
        if (c.size() != rows_) throw DimensionError("column size mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Complex> data_;
};

// ---- vector algebra ----

inline Complex scalar_product(const Vector& f, const Vector& g) {
    if (f.size() != g.size())
        throw DimensionError("scalar_product: dimension mismatch");
    Complex s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += std::conj(f[k]) * g[k];
    return s;
}

inline double norm(const Vector& f) { return std::sqrt(std::abs(scalar_product(f, f))); }

inline Vector scaled(const Vector& f, Complex a) {
    Vector r(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) r[k] = a * f[k];
    return r;
}

inline Vector add(const Vector& f, const Vector& g) {
    if (f.size() != g.size()) throw DimensionError("vector add: dimension mismatch");
    Vector r(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) r[k] = f[k] + g[k];
    return r;
}

inline Vector sub(const Vector& f, const Vector& g) {
    if (f.size() != g.size()) throw DimensionError("vector sub: dimension mismatch");
    Vector r(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) r[k] = f[k] - g[k];
    return r;
}

inline Vector conjugated(const Vector& f) {
    Vector r(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) r[k] = std::conj(f[k]);
    return r;
}

// ---- matrix algebra ----

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Vector matrix_apply(const Matrix& a, const Vector& f) {
    if (a.cols() != f.size()) throw DimensionError("matrix_apply: dimension mismatch");
    Vector r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * f[j];
        r[i] = s;
    }
    return r;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix add: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline Matrix sub(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix sub: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline Matrix scaled(const Matrix& a, Complex z) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = z * a(i, j);
    return c;
}

inline Matrix transpose(const Matrix& a) {
    Matrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
    return c;
}

inline Matrix conjugated(const Matrix& a) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
    return c;
}

// conjugate transpose
inline Matrix adjoint_dagger(const Matrix& a) { return conjugated(transpose(a)); }

inline double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// ||A-B||_F / max(1, ||A||_F, ||B||_F)
inline double frobenius_residual(const Matrix& a, const Matrix& b) {
    double scale = std::max({1.0, frobenius_norm(a), frobenius_norm(b)});
    return frobenius_norm(sub(a, b)) / scale;
}

inline Matrix outer(const Vector& f, const Vector& g) {
    // |f><g| in matrix form: f * g^dagger
    Matrix c(f.size(), g.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) c(i, j) = f[i] * std::conj(g[j]);
    return c;
}

inline bool is_hermitian(const Matrix& a, double tol_sym) {
    if (!a.square()) return false;
    double scale = std::max(1.0, frobenius_norm(a));
    return frobenius_norm(sub(a, adjoint_dagger(a))) <= tol_sym * scale;
}

}  // namespace nhqm
