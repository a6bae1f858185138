#pragma once

// Time evolution Phi(t) = exp(-iHt) Phi_0 through the spectral decomposition,
// the normalized transition probability, and the closed-form two-level
// expressions in both regimes with their long-time behavior.

#include "nhqm/biortho.hpp"
#include "nhqm/core.hpp"
#include "nhqm/two_level.hpp"

namespace nhqm {

struct EvolutionSpec {
    Vector c;  // expansion of Phi_0 over the phi basis
    Vector d;  // expansion of Phi_f over the psi basis
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t n_steps = 0;

    void validate() const {
        auto nonzero = [](const Vector& v) {
            for (const auto& z : v)
                if (z != Complex(0.0)) return true;
            return false;
        };
        if (c.empty() || d.empty() || !nonzero(c) || !nonzero(d))
            throw ConfigError("evolution spec: c and d must each have a nonzero entry");
        if (!(t_end > t_start)) throw ConfigError("evolution spec: t_end must exceed t_start");
        if (n_steps < 2) throw ConfigError("evolution spec: n_steps must be >= 2");
    }
};

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<double> norms_sq;
    std::vector<double> probs;
};

inline Vector evolve(const Matrix& h, const BiorthogonalSystem& sys, const Vector& phi0,
                     double t) {
    if (phi0.size() != sys.dim() || h.rows() != sys.dim())
        throw DimensionError("evolve: dimension mismatch");
    // exp(-iHt) = Phi diag(exp(-i E_k t)) Psi^dagger, exact for diagonalizable H
    Vector coeffs = matrix_apply(adjoint_dagger(sys.psi), phi0);
    const Complex minus_i(0.0, -1.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        coeffs[k] *= std::exp(minus_i * sys.eigenvalues[k] * t);
    return matrix_apply(sys.phi, coeffs);
}

inline double transition_probability(const Vector& phif, const Vector& phit) {
    const double nf = norm(phif), nt = norm(phit);
    if (nf == 0.0 || nt == 0.0)
        throw NormalizationError("transition_probability: zero vector");
    const double ov = std::abs(scalar_product(phif, phit));
    double p = (ov * ov) / (nf * nf * nt * nt);
    return std::min(p, 1.0);  // clamp roundoff just above the Cauchy-Schwarz bound
}

struct ClosedFormSample {
    double norm_sq = 0.0;     // |Phi(t)|^2
    double overlap_sq = 0.0;  // |<Phi_f, Phi(t)>|^2
    double prob = 0.0;
};

namespace detail {

inline double phif_norm_sq(const TwoLevelParams& p, Complex d1, Complex d2) {
    const double a = p.alpha, b = p.beta;
    const double g = (2.0 - a * b) * (2.0 - a * b);
    return (std::norm(d1) * (4.0 + a * a) + std::norm(d2) * (1.0 + b * b) -
            (a + 2.0 * b) * 2.0 * std::real(std::conj(d1) * d2)) /
           g;
}

}  // namespace detail

inline ClosedFormSample closed_form_ur(const TwoLevelParams& p, const EvolutionSpec& spec,
                                       double t, const Tolerances& tol = {}) {
    if (std::abs(p.e1.imag()) > tol.gap || std::abs(p.e2.imag()) > tol.gap)
        throw RegimeError("closed_form_ur: eigenvalues must be real");
    if (spec.c.size() != 2 || spec.d.size() != 2)
        throw DimensionError("closed_form_ur: two-level coefficients required");
    const double a = p.alpha, b = p.beta;
    const Complex c1 = spec.c[0], c2 = spec.c[1], d1 = spec.d[0], d2 = spec.d[1];
    const double w = p.e1.real() - p.e2.real();
    const Complex osc = std::exp(Complex(0.0, w * t));
    ClosedFormSample out;
    out.norm_sq = std::norm(c1) * (1.0 + b * b) + std::norm(c2) * (4.0 + a * a) +
                  (a + 2.0 * b) * 2.0 * std::real(std::conj(c1) * c2 * osc);
    out.overlap_sq = std::norm(c1) * std::norm(d1) + std::norm(c2) * std::norm(d2) +
                     2.0 * std::real(std::conj(c1) * c2 * d1 * std::conj(d2) * osc);
    out.prob = out.overlap_sq / (detail::phif_norm_sq(p, d1, d2) * out.norm_sq);
    return out;
}

inline ClosedFormSample closed_form_br(const TwoLevelParams& p, const EvolutionSpec& spec,
                                       double t, const Tolerances& tol = {}) {
    if (std::abs(p.e1 - std::conj(p.e2)) > tol.gap || std::abs(p.e1.imag()) <= tol.gap)
        throw RegimeError("closed_form_br: requires E1 = conj(E2) with nonzero imaginary part");
    if (spec.c.size() != 2 || spec.d.size() != 2)
        throw DimensionError("closed_form_br: two-level coefficients required");
    const double a = p.alpha, b = p.beta;
    const Complex c1 = spec.c[0], c2 = spec.c[1], d1 = spec.d[0], d2 = spec.d[1];
    const double cap_i = p.e1.imag();
    const double up = std::exp(2.0 * cap_i * t), dn = std::exp(-2.0 * cap_i * t);
    ClosedFormSample out;
    out.norm_sq = std::norm(c1) * (1.0 + b * b) * up + std::norm(c2) * (4.0 + a * a) * dn +
                  (a + 2.0 * b) * 2.0 * std::real(std::conj(c1) * c2);
    out.overlap_sq = std::norm(c1) * std::norm(d1) * up + std::norm(c2) * std::norm(d2) * dn +
                     2.0 * std::real(std::conj(c1) * c2 * d1 * std::conj(d2));
    out.prob = out.overlap_sq / (detail::phif_norm_sq(p, d1, d2) * out.norm_sq);
    return out;
}

inline EvolutionTrace trace(const Matrix& h, const BiorthogonalSystem& sys,
                            const EvolutionSpec& spec) {
    spec.validate();
    if (spec.c.size() != sys.dim() || spec.d.size() != sys.dim())
        throw DimensionError("trace: coefficient length must match system dimension");
    const Vector phi0 = matrix_apply(sys.phi, spec.c);
    const Vector phif = matrix_apply(sys.psi, spec.d);
    EvolutionTrace tr;
    tr.times.reserve(spec.n_steps);
    const double dt = (spec.t_end - spec.t_start) / double(spec.n_steps - 1);
    for (std::size_t i = 0; i < spec.n_steps; ++i) {
        const double t = spec.t_start + dt * double(i);
        Vector st = evolve(h, sys, phi0, t);
        tr.times.push_back(t);
        tr.norms_sq.push_back(scalar_product(st, st).real());
        tr.probs.push_back(transition_probability(phif, st));
        tr.states.push_back(std::move(st));
    }
    return tr;
}

struct LongTimeBehavior {
    enum class Kind { Periodic, ConvergesTo, DecaysToZero } kind;
    double value = 0.0;  // period for Periodic, limit for ConvergesTo
};

// Long-time behavior of the closed-form probability: periodic in the UR,
// a finite limit (possibly zero) from the dominant exponential balance in
// the BR.
inline LongTimeBehavior asymptote_and_period(const TwoLevelParams& p,
                                             const EvolutionSpec& spec,
                                             const Tolerances& tol = {}) {
    p.validate(tol);
    if (spec.c.size() != 2 || spec.d.size() != 2)
        throw DimensionError("asymptote_and_period: two-level coefficients required");
    const bool real_spectrum =
        std::abs(p.e1.imag()) <= tol.gap && std::abs(p.e2.imag()) <= tol.gap;
    if (real_spectrum) {
        const double w = p.e1.real() - p.e2.real();
        return {LongTimeBehavior::Kind::Periodic, std::abs(2.0 * M_PI / w)};
    }
    if (std::abs(p.e1 - std::conj(p.e2)) > tol.gap)
        throw RegimeError("asymptote_and_period: spectrum neither real nor conjugate pair");
    const double a = p.alpha, b = p.beta;
    const Complex c1 = spec.c[0], c2 = spec.c[1], d1 = spec.d[0], d2 = spec.d[1];
    const double cap_i = p.e1.imag();
    // exponent orders +2I, 0, -2I of numerator and denominator as t -> +inf
    const double num_coeff[3] = {std::norm(c1) * std::norm(d1),
                                 2.0 * std::real(std::conj(c1) * c2 * d1 * std::conj(d2)),
                                 std::norm(c2) * std::norm(d2)};
    const double den_coeff[3] = {std::norm(c1) * (1.0 + b * b),
                                 (a + 2.0 * b) * 2.0 * std::real(std::conj(c1) * c2),
                                 std::norm(c2) * (4.0 + a * a)};
    // walk orders from dominant to subdominant as t grows
    const int order_walk_up[3] = {0, 1, 2};    // I > 0: e^{2It} dominates
    const int order_walk_dn[3] = {2, 1, 0};    // I < 0: e^{-2It} dominates
    const int* walk = cap_i > 0.0 ? order_walk_up : order_walk_dn;
    int num_lead = -1, den_lead = -1;
    for (int k = 0; k < 3 && den_lead < 0; ++k)
        if (den_coeff[walk[k]] != 0.0) den_lead = walk[k];
    for (int k = 0; k < 3 && num_lead < 0; ++k)
        if (num_coeff[walk[k]] != 0.0) num_lead = walk[k];
    const double phif2 = detail::phif_norm_sq(p, d1, d2);
    if (num_lead < 0) return {LongTimeBehavior::Kind::DecaysToZero, 0.0};
    // compare exponent ranks: lower index = larger exponent when I > 0
    auto rank = [&](int idx) {
        for (int k = 0; k < 3; ++k)
            if (walk[k] == idx) return k;
        return 3;
    };
    if (rank(num_lead) > rank(den_lead))
        return {LongTimeBehavior::Kind::DecaysToZero, 0.0};
    // equal leading order (numerator can never outgrow the denominator)
    const double limit = num_coeff[num_lead] / (den_coeff[den_lead] * phif2);
    if (limit == 0.0) return {LongTimeBehavior::Kind::DecaysToZero, 0.0};
    return {LongTimeBehavior::Kind::ConvergesTo, limit};
}

}  // namespace nhqm
