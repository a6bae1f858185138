#pragma once

// The explicit two-level model: H(alpha, beta, E1, E2) with closed-form
// eigensystem, metric matrices and conjugated-parameter companion, plus the
// (r, s, t, theta) parametrization it maps onto and the broken/unbroken
// regime classifier.

#include "nhqm/biortho.hpp"
#include "nhqm/core.hpp"

namespace nhqm {

struct TwoLevelParams {
    double alpha = 0.0;
    double beta = 0.0;
    Complex e1;
    Complex e2;

    void validate(const Tolerances& tol = {}) const {
        if (std::abs(2.0 - alpha * beta) <= tol.gap)
            throw DegenerateParamError("two-level: alpha*beta = 2");
        if (std::abs(e1 - e2) <= tol.gap)
            throw DegenerateParamError("two-level: coincident eigenvalues");
    }
};

enum class Regime { Unbroken, Broken, ExceptionalPoint };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Unbroken: return "unbroken";
        case Regime::Broken: return "broken";
        default: return "exceptional";
    }
}

struct DasGreenwoodParams {
    double r = 0.0;
    double s = 0.0;
    double t = 0.0;
    double theta = 0.0;
    double phi_phase = -M_PI / 2.0;  // the alpha/beta mapping is defined here only

    double discriminant() const { return r * r * std::sin(theta) * std::sin(theta) - t * s; }

    void validate() const {
        if (s == 0.0 || t == 0.0)
            throw DegenerateParamError("das_greenwood: s and t must be non zero");
    }
};

inline Matrix build_h(const TwoLevelParams& p, const Tolerances& tol = {}) {
    p.validate(tol);
    const double f = 1.0 / (2.0 - p.alpha * p.beta);
    Matrix h(2, 2);
    h(0, 0) = f * (2.0 * p.e1 - p.alpha * p.beta * p.e2);
    h(0, 1) = f * (p.alpha * (p.e2 - p.e1));
    h(1, 0) = f * (2.0 * p.beta * (p.e1 - p.e2));
    h(1, 1) = f * (2.0 * p.e2 - p.alpha * p.beta * p.e1);
    return h;
}

struct TwoLevelEigensystem {
    Vector phi1, phi2, psi1, psi2;

    Matrix phi_matrix() const {
        Matrix m(2, 2);
        m.set_column(0, phi1);
        m.set_column(1, phi2);
        return m;
    }
    Matrix psi_matrix() const {
        Matrix m(2, 2);
        m.set_column(0, psi1);
        m.set_column(1, psi2);
        return m;
    }
};

// The model's own normalization: phi columns are not unit vectors, but the
// pairing <phi_k, psi_n> = delta_kn holds exactly.
inline TwoLevelEigensystem closed_form_eigensystem(const TwoLevelParams& p,
                                                   const Tolerances& tol = {}) {
    p.validate(tol);
    const double f = 1.0 / (2.0 - p.alpha * p.beta);
    TwoLevelEigensystem sys;
    sys.phi1 = {1.0, p.beta};
    sys.phi2 = {p.alpha, 2.0};
    sys.psi1 = {2.0 * f, -p.alpha * f};
    sys.psi2 = {-p.beta * f, 1.0 * f};
    return sys;
}

inline std::pair<Matrix, Matrix> closed_form_metrics(const TwoLevelParams& p,
                                                     const Tolerances& tol = {}) {
    p.validate(tol);
    const double a = p.alpha, b = p.beta;
    Matrix s_phi(2, 2), s_psi(2, 2);
    s_phi(0, 0) = 1.0 + a * a;
    s_phi(0, 1) = s_phi(1, 0) = b + 2.0 * a;
    s_phi(1, 1) = 4.0 + b * b;
    const double g = 1.0 / ((2.0 - a * b) * (2.0 - a * b));
    s_psi(0, 0) = g * (4.0 + b * b);
    s_psi(0, 1) = s_psi(1, 0) = -g * (b + 2.0 * a);
    s_psi(1, 1) = g * (1.0 + a * a);
    return {s_phi, s_psi};
}

// Same matrix with each E_j replaced by its conjugate.
inline Matrix closed_form_hphiphi(const TwoLevelParams& p, const Tolerances& tol = {}) {
    TwoLevelParams q = p;
    q.e1 = std::conj(p.e1);
    q.e2 = std::conj(p.e2);
    return build_h(q, tol);
}

inline Matrix build_das_greenwood_h(const DasGreenwoodParams& dg) {
    Matrix h(2, 2);
    const Complex i(0.0, 1.0);
    h(0, 0) = dg.r * std::exp(i * dg.theta);
    h(0, 1) = dg.s * std::exp(i * dg.phi_phase);
    h(1, 0) = dg.t * std::exp(-i * dg.phi_phase);
    h(1, 1) = dg.r * std::exp(-i * dg.theta);
    return h;
}

inline Regime classify_regime(const DasGreenwoodParams& dg, const Tolerances& tol = {}) {
    dg.validate();
    const double disc = dg.discriminant();
    const double band = tol.gap * std::max(1.0, dg.r * dg.r + std::abs(dg.t * dg.s));
    if (disc > band) return Regime::Broken;
    if (disc < -band) return Regime::Unbroken;
    return Regime::ExceptionalPoint;
}

// Mapping onto (alpha, beta, E1, E2); only defined in the broken regime and
// at phi_phase = -pi/2, where the off-diagonal entries are purely imaginary.
inline TwoLevelParams map_das_greenwood(const DasGreenwoodParams& dg, int branch = +1,
                                        const Tolerances& tol = {}) {
    dg.validate();
    if (std::abs(dg.phi_phase + M_PI / 2.0) > tol.gap)
        throw NotBrokenRegimeError("map_das_greenwood: mapping requires phi_phase = -pi/2");
    const double disc = dg.discriminant();
    if (!(disc > 0.0))
        throw NotBrokenRegimeError("map_das_greenwood: r^2 sin^2(theta) - ts <= 0");
    const double sign = branch >= 0 ? 1.0 : -1.0;
    TwoLevelParams p;
    p.beta = (dg.r * std::sin(dg.theta) + sign * std::sqrt(disc)) / dg.s;
    p.alpha = 2.0 * p.beta * dg.s / dg.t;
    if (p.alpha == 0.0) throw DegenerateParamError("map_das_greenwood: alpha = 0");
    const double cap_r = dg.r * std::cos(dg.theta);
    const double cap_i = (2.0 - p.alpha * p.beta) / (2.0 * p.alpha) * dg.s;
    p.e1 = Complex(cap_r, cap_i);
    p.e2 = Complex(cap_r, -cap_i);
    p.validate(tol);
    return p;
}

}  // namespace nhqm
