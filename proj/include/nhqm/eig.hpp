#pragma once

// Dense eigensolvers and matrix functions:
//  - hermitian_eig: cyclic Jacobi with complex rotations
//  - general_eig:   Householder Hessenberg + explicitly shifted QR to Schur
//                   form, eigenvectors by triangular back substitution
//  - inverse:       Gaussian elimination with partial pivoting
//  - positive_sqrt: spectral square root of an SPD Hermitian matrix

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "nhqm/core.hpp"

namespace nhqm {

struct HermitianEig {
    std::vector<double> eigenvalues;  // ascending
    Matrix vectors;                   // unitary, k-th column pairs with eigenvalues[k]
};

struct EigenDecomposition {
    std::vector<Complex> eigenvalues;  // sorted by (Re, Im)
    Matrix right_vectors;              // unit-norm columns
    double condition_estimate = 0.0;   // cond_2 of the eigenvector matrix
};

namespace detail {

inline double offdiag_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// largest-modulus entry made real positive, for reproducible vector output
inline void fix_phase(Vector& v) {
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > best) { best = std::abs(v[i]); imax = i; }
    if (best > 0.0) {
        Complex phase = v[imax] / std::abs(v[imax]);
        for (auto& x : v) x /= phase;
    }
}

}  // namespace detail

inline HermitianEig hermitian_eig(const Matrix& a, const Tolerances& tol = {}) {
    if (!a.square()) throw DimensionError("hermitian_eig: matrix not square");
    if (!is_hermitian(a, tol.sym))
        throw SymmetryError("hermitian_eig: input not Hermitian to tol_sym");
    const std::size_t n = a.rows();
    Matrix w = a;
    Matrix u = Matrix::identity(n);
    const double scale = std::max(1.0, frobenius_norm(a));
    const int max_sweeps = 64;

    int sweep = 0;
    while (detail::offdiag_norm(w) > 1e-14 * scale) {
        if (++sweep > max_sweeps)
            throw ConvergenceError("hermitian_eig: Jacobi did not converge");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = w(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const Complex phase = apq / std::abs(apq);
                // real rotation after absorbing the phase of a_pq
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // column rotation: [p q] <- [p q] * [[c, s],[-s*conj(ph), c*conj(ph)]]
                const Complex upp = c, upq = s;
                const Complex uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex wip = w(i, p), wiq = w(i, q);
                    w(i, p) = wip * upp + wiq * uqp;
                    w(i, q) = wip * upq + wiq * uqq;
                    const Complex uip = u(i, p), uiq = u(i, q);
                    u(i, p) = uip * upp + uiq * uqp;
                    u(i, q) = uip * upq + uiq * uqq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex wpj = w(p, j), wqj = w(q, j);
                    w(p, j) = std::conj(upp) * wpj + std::conj(uqp) * wqj;
                    w(q, j) = std::conj(upq) * wpj + std::conj(uqq) * wqj;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });
    HermitianEig out;
    out.eigenvalues.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = w(order[k], order[k]).real();
        Vector col = u.column(order[k]);
        detail::fix_phase(col);
        out.vectors.set_column(k, col);
    }
    return out;
}

inline Matrix inverse(const Matrix& a, const Tolerances& tol = {}) {
    if (!a.square()) throw DimensionError("inverse: matrix not square");
    const std::size_t n = a.rows();
    Matrix w = a;
    Matrix inv = Matrix::identity(n);
    const double scale = std::max(1e-300, frobenius_norm(a));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(w(i, col)) > std::abs(w(piv, col))) piv = i;
        if (std::abs(w(piv, col)) < std::max(1e-300, scale / tol.cond_max * 1e-2))
            throw SingularMatrixError("inverse: pivot below working precision");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(piv, j), w(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const Complex d = w(col, col);
        for (std::size_t j = 0; j < n; ++j) { w(col, j) /= d; inv(col, j) /= d; }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const Complex f = w(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline double cond2(const Matrix& a, const Tolerances& tol = {}) {
    // singular values via the Hermitian eigenvalues of A^dagger A
    HermitianEig h = hermitian_eig(multiply(adjoint_dagger(a), a), tol);
    double lo = std::max(h.eigenvalues.front(), 0.0);
    double hi = std::max(h.eigenvalues.back(), 0.0);
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(hi / lo);
}

inline Matrix positive_sqrt(const Matrix& a, const Tolerances& tol = {}) {
    if (!a.square()) throw DimensionError("positive_sqrt: matrix not square");
    HermitianEig h = hermitian_eig(a, tol);
    const double scale = std::max(1.0, frobenius_norm(a));
    if (h.eigenvalues.front() <= tol.pd * scale)
        throw NotPositiveDefiniteError("positive_sqrt: matrix not positive definite");
    const std::size_t n = a.rows();
    Matrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = std::sqrt(h.eigenvalues[k]);
    return multiply(h.vectors, multiply(d, adjoint_dagger(h.vectors)));
}

namespace detail {

// Householder reduction to upper Hessenberg form, accumulating Q: A = Q H Q^dagger.
inline void hessenberg(Matrix& h, Matrix& q) {
    const std::size_t n = h.rows();
    q = Matrix::identity(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm < 1e-300) continue;
        Complex x0 = h(k + 1, k);
        Complex alpha = (std::abs(x0) > 0.0) ? -(x0 / std::abs(x0)) * colnorm
                                             : Complex(-colnorm, 0.0);
        Vector v(n, 0.0);
        v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 < 1e-300) continue;
        // H <- P H P,  Q <- Q P  with P = I - 2 v v^dagger / |v|^2
        auto reflect_rows = [&](Matrix& m) {
            for (std::size_t j = 0; j < n; ++j) {
                Complex s = 0.0;
                for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * m(i, j);
                s *= 2.0 / vnorm2;
                for (std::size_t i = k + 1; i < n; ++i) m(i, j) -= s * v[i];
            }
        };
        auto reflect_cols = [&](Matrix& m) {
            for (std::size_t i = 0; i < n; ++i) {
                Complex s = 0.0;
                for (std::size_t j = k + 1; j < n; ++j) s += m(i, j) * v[j];
                s *= 2.0 / vnorm2;
                for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= s * std::conj(v[j]);
            }
        };
        reflect_rows(h);
        reflect_cols(h);
        reflect_cols(q);
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

// Schur form T = Q^dagger A Q by explicitly shifted QR with deflation.
inline void schur(Matrix& t, Matrix& q, double scale) {
    const std::size_t n = t.rows();
    hessenberg(t, q);
    if (n < 2) return;
    const double eps = 1e-15;
    std::size_t hi = n - 1;
    int iter = 0, since_deflation = 0;
    const int max_iter = 80 * static_cast<int>(n);
    while (hi > 0) {
        // deflation scan
        bool deflated = false;
        for (std::size_t i = hi; i >= 1; --i) {
            double small = eps * (std::abs(t(i - 1, i - 1)) + std::abs(t(i, i)));
            if (small == 0.0) small = eps * scale;
            if (std::abs(t(i, i - 1)) <= small) {
                t(i, i - 1) = 0.0;
                if (i == hi) {
                    --hi;
                    since_deflation = 0;
                    deflated = true;
                }
            }
        }
        if (deflated || hi == 0) continue;
        if (++iter > max_iter)
            throw ConvergenceError("general_eig: QR iteration did not converge");

        // find active window [lo, hi]
        std::size_t lo = hi;
        while (lo > 0 && std::abs(t(lo, lo - 1)) != 0.0) --lo;
        // Wilkinson shift from the trailing 2x2 of the window
        Complex sigma;
        {
            const Complex a = t(hi - 1, hi - 1), b = t(hi - 1, hi);
            const Complex c = t(hi, hi - 1), d = t(hi, hi);
            const Complex tr = a + d;
            const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
            const Complex l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
            sigma = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
        }
        if (++since_deflation % 12 == 0) {
            // exceptional shift to break rare stagnation cycles
            sigma = t(hi, hi) + Complex(std::abs(t(hi, hi - 1)), 0.0);
        }

        for (std::size_t i = lo; i <= hi; ++i) t(i, i) -= sigma;
        // QR of the window via Givens rotations applied to full rows/columns
        std::vector<std::array<Complex, 2>> rot(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) {
            const Complex x = t(i, i), y = t(i + 1, i);
            const double r = std::sqrt(std::norm(x) + std::norm(y));
            Complex c = 1.0, s = 0.0;
            if (r > 0.0) { c = x / r; s = y / r; }
            rot[i - lo] = {c, s};
            for (std::size_t j = i; j < t.cols(); ++j) {
                const Complex ti = t(i, j), tj = t(i + 1, j);
                t(i, j) = std::conj(c) * ti + std::conj(s) * tj;
                t(i + 1, j) = -s * ti + c * tj;
            }
            t(i + 1, i) = 0.0;
        }
        for (std::size_t i = lo; i < hi; ++i) {
            const Complex c = rot[i - lo][0], s = rot[i - lo][1];
            const std::size_t top = std::min(i + 2, t.rows() - 1);
            for (std::size_t row = 0; row <= top; ++row) {
                const Complex ti = t(row, i), tj = t(row, i + 1);
                t(row, i) = ti * c + tj * s;
                t(row, i + 1) = -ti * std::conj(s) + tj * std::conj(c);
            }
            for (std::size_t row = 0; row < q.rows(); ++row) {
                const Complex qi = q(row, i), qj = q(row, i + 1);
                q(row, i) = qi * c + qj * s;
                q(row, i + 1) = -qi * std::conj(s) + qj * std::conj(c);
            }
        }
        for (std::size_t i = lo; i <= hi; ++i) t(i, i) += sigma;
    }
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) t(i, j) = 0.0;
}

}  // namespace detail

inline EigenDecomposition general_eig(const Matrix& h, const Tolerances& tol = {}) {
    if (!h.square()) throw DimensionError("general_eig: matrix not square");
    const std::size_t n = h.rows();
    const double scale = std::max(1.0, frobenius_norm(h));

    Matrix t = h, q;
    detail::schur(t, q, scale);

    std::vector<Complex> lam(n);
    for (std::size_t k = 0; k < n; ++k) lam[k] = t(k, k);

    // multiplicity-one assumption
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(lam[i] - lam[j]) < tol.gap * scale)
                throw DegenerateSpectrumError(
                    "general_eig: eigenvalue gap below tol_gap (multiplicity-one violated)");

    // eigenvectors of the triangular factor by back substitution, mapped by Q
    Matrix phi(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Vector y(n, 0.0);
        y[k] = 1.0;
        for (std::size_t i = k; i-- > 0;) {
            Complex s = 0.0;
            for (std::size_t m = i + 1; m <= k; ++m) s += t(i, m) * y[m];
            const Complex denom = t(i, i) - lam[k];
            y[i] = -s / denom;
        }
        Vector x = matrix_apply(q, y);
        const double nx = norm(x);
        for (auto& v : x) v /= nx;
        detail::fix_phase(x);
        phi.set_column(k, x);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (lam[i].real() != lam[j].real()) return lam[i].real() < lam[j].real();
        return lam[i].imag() < lam[j].imag();
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.right_vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = lam[order[k]];
        out.right_vectors.set_column(k, phi.column(order[k]));
    }
    out.condition_estimate = cond2(out.right_vectors, tol);

    // per-column residual check against the input matrix
    for (std::size_t k = 0; k < n; ++k) {
        Vector col = out.right_vectors.column(k);
        Vector r = sub(matrix_apply(h, col), scaled(col, out.eigenvalues[k]));
        if (norm(r) > 1e3 * tol.eig * scale)
            throw ConvergenceError("general_eig: eigenpair residual above tolerance");
    }
    return out;
}

}  // namespace nhqm
