#pragma once

// Shared test utilities: seeded random generators for matrices with
// controlled spectra/conditioning, and an independent matrix exponential
// oracle (scaling and squaring on a Taylor series) used to cross-check the
// spectral propagator.

#include <random>

#include "nhqm/nhqm.hpp"

namespace testsupport {

using nhqm::Complex;
using nhqm::Matrix;
using nhqm::Vector;

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    return {g(rng), g(rng)};
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    Vector v(n);
    for (auto& x : v) x = random_complex(rng, scale);
    return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_complex(rng, scale);
    return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    Matrix m = random_matrix(rng, n, scale);
    return nhqm::scaled(nhqm::add(m, nhqm::adjoint_dagger(m)), 0.5);
}

// Householder-free unitary via Gram-Schmidt on a Gaussian matrix; fine at
// these sizes because a Ginibre matrix is almost surely well conditioned.
inline Matrix random_unitary(std::mt19937_64& rng, std::size_t n) {
    Matrix a = random_matrix(rng, n);
    Matrix q(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Vector v = a.column(k);
        for (std::size_t j = 0; j < k; ++j) {
            Vector qj = q.column(j);
            Complex proj = nhqm::scalar_product(qj, v);
            v = nhqm::sub(v, nhqm::scaled(qj, proj));
        }
        const double nv = nhqm::norm(v);
        for (auto& x : v) x /= nv;
        q.set_column(k, v);
    }
    return q;
}

inline Matrix random_spd(std::mt19937_64& rng, std::size_t n, double cond = 10.0) {
    Matrix u = random_unitary(rng, n);
    Matrix d(n, n);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k)
        d(k, k) = 1.0 + (cond - 1.0) * (n == 1 ? 0.0 : double(k) / double(n - 1)) +
                  0.3 * uni(rng);
    return nhqm::multiply(u, nhqm::multiply(d, nhqm::adjoint_dagger(u)));
}

// invertible matrix with 2-norm condition number exactly cond
inline Matrix random_conditioned(std::mt19937_64& rng, std::size_t n, double cond) {
    Matrix u = random_unitary(rng, n);
    Matrix v = random_unitary(rng, n);
    Matrix s(n, n);
    for (std::size_t k = 0; k < n; ++k)
        s(k, k) = 1.0 + (cond - 1.0) * (n == 1 ? 0.0 : double(k) / double(n - 1));
    return nhqm::multiply(u, nhqm::multiply(s, v));
}

// distinct eigenvalues with pairwise gap >= min_gap
inline std::vector<Complex> random_spectrum(std::mt19937_64& rng, std::size_t n,
                                            double min_gap = 0.1, bool force_complex = false) {
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    std::vector<Complex> out;
    while (out.size() < n) {
        Complex cand(uni(rng), uni(rng));
        if (force_complex && out.empty()) cand = Complex(uni(rng), 1.0 + std::abs(uni(rng)));
        bool ok = true;
        for (const auto& e : out)
            if (std::abs(e - cand) < min_gap) ok = false;
        if (ok) out.push_back(cand);
    }
    return out;
}

inline std::vector<double> random_real_spectrum(std::mt19937_64& rng, std::size_t n,
                                                double min_gap = 0.1) {
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    std::vector<double> out;
    while (out.size() < n) {
        double cand = uni(rng);
        bool ok = true;
        for (double e : out)
            if (std::abs(e - cand) < min_gap) ok = false;
        if (ok) out.push_back(cand);
    }
    return out;
}

struct DiagonalizableSample {
    Matrix h;
    Matrix basis;  // P with H = P D P^{-1}
    std::vector<Complex> spectrum;
};

inline DiagonalizableSample random_diagonalizable(std::mt19937_64& rng, std::size_t n,
                                                  double min_gap = 0.1, double cond = 20.0,
                                                  bool force_complex = false) {
    DiagonalizableSample s;
    s.spectrum = random_spectrum(rng, n, min_gap, force_complex);
    s.basis = random_conditioned(rng, n, cond);
    Matrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = s.spectrum[k];
    s.h = nhqm::multiply(s.basis, nhqm::multiply(d, nhqm::inverse(s.basis)));
    return s;
}

inline DiagonalizableSample random_real_spectrum_matrix(std::mt19937_64& rng, std::size_t n,
                                                        double min_gap = 0.1,
                                                        double cond = 20.0) {
    DiagonalizableSample s;
    for (double e : random_real_spectrum(rng, n, min_gap)) s.spectrum.push_back(e);
    s.basis = random_conditioned(rng, n, cond);
    Matrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = s.spectrum[k];
    s.h = nhqm::multiply(s.basis, nhqm::multiply(d, nhqm::inverse(s.basis)));
    return s;
}

// exp(A) by scaling-and-squaring on the Taylor series; independent of any
// eigendecomposition.
inline Matrix expm_taylor(const Matrix& a) {
    const std::size_t n = a.rows();
    double scale = nhqm::frobenius_norm(a);
    int squarings = 0;
    Matrix b = a;
    while (scale > 0.5) {
        b = nhqm::scaled(b, 0.5);
        scale *= 0.5;
        ++squarings;
    }
    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = nhqm::scaled(nhqm::multiply(term, b), 1.0 / double(k));
        result = nhqm::add(result, term);
        if (nhqm::frobenius_norm(term) < 1e-18 * std::max(1.0, nhqm::frobenius_norm(result)))
            break;
    }
    for (int k = 0; k < squarings; ++k) result = nhqm::multiply(result, result);
    return result;
}

inline nhqm::TwoLevelParams random_two_level(std::mt19937_64& rng, bool broken) {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    nhqm::TwoLevelParams p;
    do {
        p.alpha = uni(rng);
        p.beta = uni(rng);
    } while (std::abs(2.0 - p.alpha * p.beta) < 0.2);
    if (broken) {
        const double r = uni(rng);
        double i = 0.0;
        while (std::abs(i) < 0.2) i = uni(rng);
        p.e1 = Complex(r, i);
        p.e2 = std::conj(p.e1);
    } else {
        double e1 = uni(rng), e2 = uni(rng);
        while (std::abs(e1 - e2) < 0.2) e2 = uni(rng);
        p.e1 = e1;
        p.e2 = e2;
    }
    return p;
}

}  // namespace testsupport
