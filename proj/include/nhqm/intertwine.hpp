#pragma once

// Operators derived from H and its biorthogonal system: the antilinear
// exchange operators V_phi, V_psi, the products H_phi = V_phi H,
// Ht_phi = H V_phi, the linear H_phiphi = V_phi H V_phi, the symmetrized
// H0/Ht0, and the intertwining/isospectrality residual suites.

#include "nhqm/antilinear.hpp"
#include "nhqm/biortho.hpp"
#include "nhqm/core.hpp"
#include "nhqm/report.hpp"

namespace nhqm {

struct DerivedOperators {
    AntilinearOp h_phi;        // V_phi H
    AntilinearOp h_phi_tilde;  // H V_phi
    Matrix h_phiphi;           // V_phi H V_phi, linear
    AntilinearOp h0;           // S_psi^1/2 H_phi S_phi^1/2
    AntilinearOp h0_tilde;     // S_psi^1/2 Ht_phi S_phi^1/2
    Matrix e_basis;            // orthonormal columns e_k = S_psi^1/2 phi_k
};

// V_phi f = sum_k <f, psi_k> phi_k  has matrix part phi psi^T; V_psi dually.
inline std::pair<AntilinearOp, AntilinearOp> build_v_ops(const BiorthogonalSystem& sys,
                                                         const Tolerances& tol = {}) {
    AntilinearOp v_phi{multiply(sys.phi, transpose(sys.psi))};
    AntilinearOp v_psi{multiply(sys.psi, transpose(sys.phi))};

    const std::size_t n = sys.dim();
    const Matrix id = Matrix::identity(n);
    double res = frobenius_residual(compose_aa(v_phi, v_phi), id);
    res = std::max(res, frobenius_residual(compose_aa(v_psi, v_psi), id));
    res = std::max(res, frobenius_residual(adjoint(v_phi).m, v_psi.m));
    for (std::size_t k = 0; k < n; ++k) {
        Vector pk = sys.phi.column(k), qk = sys.psi.column(k);
        res = std::max(res, norm(sub(nhqm::apply(v_phi, pk), pk)) / std::max(1.0, norm(pk)));
        res = std::max(res, norm(sub(nhqm::apply(v_psi, qk), qk)) / std::max(1.0, norm(qk)));
    }
    if (res > 1e3 * tol.eig)
        throw ConstructionError("build_v_ops: exchange-operator contracts violated");
    return {v_phi, v_psi};
}

inline DerivedOperators build_derived(const Matrix& h, const BiorthogonalSystem& sys,
                                      const Tolerances& tol = {}) {
    auto [v_phi, v_psi] = build_v_ops(sys, tol);
    DerivedOperators d;
    d.h_phi = compose_al(v_phi, h);                    // V_phi after H
    d.h_phi_tilde = compose_la(h, v_phi);              // H after V_phi
    d.h_phiphi = compose_aa(v_phi, d.h_phi_tilde);     // V_phi (H V_phi)
    d.h0 = compose_la(sys.s_psi_sqrt, compose_al(d.h_phi, sys.s_phi_sqrt));
    d.h0_tilde = compose_la(sys.s_psi_sqrt, compose_al(d.h_phi_tilde, sys.s_phi_sqrt));
    d.e_basis = multiply(sys.s_psi_sqrt, sys.phi);
    return d;
}

inline ResidualReport check_derived_structure(const DerivedOperators& d,
                                              const BiorthogonalSystem& sys, const Matrix& h,
                                              const Tolerances& tol = {}) {
    ResidualReport rep;
    // H_phi^dagger = H^dagger V_psi
    auto [v_phi, v_psi] = build_v_ops(sys, tol);
    rep.add("H_phi^d = H^d V_psi",
            frobenius_residual(adjoint(d.h_phi).m, compose_la(adjoint_dagger(h), v_psi).m),
            tol.eig);
    rep.add("H0 self-adjoint (symmetric matrix part)",
            frobenius_residual(d.h0.m, transpose(d.h0.m)), tol.eig);
    rep.add("Ht0 self-adjoint (symmetric matrix part)",
            frobenius_residual(d.h0_tilde.m, transpose(d.h0_tilde.m)), tol.eig);
    rep.add("e-basis orthonormal",
            frobenius_residual(multiply(adjoint_dagger(d.e_basis), d.e_basis),
                               Matrix::identity(sys.dim())),
            tol.eig);
    double ealt = 0.0;  // e_k = S_phi^1/2 psi_k as well
    for (std::size_t k = 0; k < sys.dim(); ++k) {
        Vector ek = d.e_basis.column(k);
        ealt = std::max(ealt, norm(sub(matrix_apply(sys.s_phi_sqrt, sys.psi.column(k)), ek)));
    }
    rep.add("e_k = S_phi^1/2 psi_k", ealt, tol.eig);
    return rep;
}

// Antilinear intertwining relations, compared on matrix parts.
inline ResidualReport check_antilinear_intertwining(const DerivedOperators& d,
                                                    const BiorthogonalSystem& sys,
                                                    const Tolerances& tol = {}) {
    ResidualReport rep;
    const AntilinearOp hp = d.h_phi, hpd = adjoint(d.h_phi);
    const AntilinearOp ht = d.h_phi_tilde, htd = adjoint(d.h_phi_tilde);
    rep.add("S_psi H_phi = H_phi^d S_psi",
            frobenius_residual(compose_la(sys.s_psi, hp).m, compose_al(hpd, sys.s_psi).m),
            tol.eig);
    rep.add("H_phi S_phi = S_phi H_phi^d",
            frobenius_residual(compose_al(hp, sys.s_phi).m, compose_la(sys.s_phi, hpd).m),
            tol.eig);
    rep.add("Ht_phi S_phi = S_phi Ht_phi^d",
            frobenius_residual(compose_al(ht, sys.s_phi).m, compose_la(sys.s_phi, htd).m),
            tol.eig);
    rep.add("Ht_phi^d S_psi = S_psi Ht_phi",
            frobenius_residual(compose_al(htd, sys.s_psi).m, compose_la(sys.s_psi, ht).m),
            tol.eig);
    return rep;
}

// Eigen-actions of the derived operators on the paired bases.
inline ResidualReport check_isospectrality(const DerivedOperators& d,
                                           const BiorthogonalSystem& sys,
                                           const Tolerances& tol = {}) {
    ResidualReport rep;
    double r_hphi = 0.0, r_hphid = 0.0, r_ht = 0.0, r_h0 = 0.0, r_ht0 = 0.0;
    for (std::size_t k = 0; k < sys.dim(); ++k) {
        const Complex e = sys.eigenvalues[k];
        const Vector pk = sys.phi.column(k);
        const Vector qk = sys.psi.column(k);
        const Vector ek = d.e_basis.column(k);
        auto rel = [](const Vector& got, const Vector& want) {
            return norm(sub(got, want)) / std::max(1.0, norm(want));
        };
        r_hphi = std::max(r_hphi, rel(nhqm::apply(d.h_phi, pk), scaled(pk, std::conj(e))));
        r_hphid = std::max(r_hphid, rel(nhqm::apply(adjoint(d.h_phi), qk), scaled(qk, std::conj(e))));
        r_ht = std::max(r_ht, rel(nhqm::apply(d.h_phi_tilde, pk), scaled(pk, e)));
        r_h0 = std::max(r_h0, rel(nhqm::apply(d.h0, ek), scaled(ek, std::conj(e))));
        r_ht0 = std::max(r_ht0, rel(nhqm::apply(d.h0_tilde, ek), scaled(ek, e)));
    }
    rep.add("H_phi phi_k = conj(E_k) phi_k", r_hphi, tol.eig);
    rep.add("H_phi^d psi_k = conj(E_k) psi_k", r_hphid, tol.eig);
    rep.add("Ht_phi phi_k = E_k phi_k", r_ht, tol.eig);
    rep.add("H0 e_k = conj(E_k) e_k", r_h0, tol.eig);
    rep.add("Ht0 e_k = E_k e_k", r_ht0, tol.eig);
    return rep;
}

// The linear intertwining relations through H_phiphi.
inline ResidualReport check_linear_intertwining(const DerivedOperators& d,
                                                const BiorthogonalSystem& sys, const Matrix& h,
                                                const Tolerances& tol = {}) {
    ResidualReport rep;
    const Matrix hd = adjoint_dagger(h);
    const Matrix hppd = adjoint_dagger(d.h_phiphi);
    rep.add("S_psi H_phiphi = H^d S_psi",
            frobenius_residual(multiply(sys.s_psi, d.h_phiphi), multiply(hd, sys.s_psi)),
            tol.eig);
    rep.add("H_phiphi S_phi = S_phi H^d",
            frobenius_residual(multiply(d.h_phiphi, sys.s_phi), multiply(sys.s_phi, hd)),
            tol.eig);
    rep.add("S_phi H_phiphi^d = H S_phi",
            frobenius_residual(multiply(sys.s_phi, hppd), multiply(h, sys.s_phi)), tol.eig);
    rep.add("S_psi H = H_phiphi^d S_psi",
            frobenius_residual(multiply(sys.s_psi, h), multiply(hppd, sys.s_psi)), tol.eig);
    return rep;
}

// Self-adjointness of the derived antilinear operators in the deformed metrics.
inline ResidualReport check_metric_selfadjointness(const DerivedOperators& d,
                                                   const BiorthogonalSystem& sys,
                                                   const Tolerances& tol = {}) {
    ResidualReport rep;
    const AntilinearOp hpd = adjoint(d.h_phi);
    const AntilinearOp htd = adjoint(d.h_phi_tilde);
    rep.add("H_phi = H_phi^sharp",
            frobenius_residual(d.h_phi.m, sharp_adjoint(d.h_phi, sys).m), tol.eig);
    rep.add("H_phi^d = (H_phi^d)^flat",
            frobenius_residual(hpd.m, flat_adjoint(hpd, sys).m), tol.eig);
    rep.add("Ht_phi = Ht_phi^sharp",
            frobenius_residual(d.h_phi_tilde.m, sharp_adjoint(d.h_phi_tilde, sys).m), tol.eig);
    rep.add("Ht_phi^d = (Ht_phi^d)^flat",
            frobenius_residual(htd.m, flat_adjoint(htd, sys).m), tol.eig);
    return rep;
}

struct SimilaritySample {
    double spectrum_deviation = 0.0;  // multiset distance to spectrum(H)
    double max_imag = 0.0;            // largest |Im| in the transformed spectrum
};

struct SimilarityReport {
    std::vector<SimilaritySample> samples;
    double max_spectrum_deviation = 0.0;
    double min_max_imag = 0.0;  // smallest over samples of the largest |Im|
    bool witnesses_impossibility = false;
};

// Similarity transforms preserve the spectrum, so a non-real eigenvalue of H
// survives every X H X^{-1}; none of the sampled conjugates can be Hermitian.
inline SimilarityReport no_selfadjoint_similarity_demo(const Matrix& h,
                                                       const std::vector<Matrix>& x_samples,
                                                       const Tolerances& tol = {}) {
    EigenDecomposition base = general_eig(h, tol);
    double base_imag = 0.0;
    for (const auto& e : base.eigenvalues) base_imag = std::max(base_imag, std::abs(e.imag()));
    if (base_imag <= tol.gap)
        throw RegimeError("no_selfadjoint_similarity_demo: H has an all-real spectrum");

    SimilarityReport rep;
    rep.min_max_imag = std::numeric_limits<double>::infinity();
    for (const auto& x : x_samples) {
        const Matrix hx = multiply(x, multiply(h, inverse(x, tol)));
        EigenDecomposition ed = general_eig(hx, tol);
        SimilaritySample s;
        // multiset comparison: greedy nearest matching, robust against sort
        // order flips within numerically coincident real parts
        std::vector<bool> used(ed.eigenvalues.size(), false);
        for (const auto& e : base.eigenvalues) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_k = 0;
            for (std::size_t k = 0; k < ed.eigenvalues.size(); ++k) {
                if (used[k]) continue;
                const double dist = std::abs(ed.eigenvalues[k] - e);
                if (dist < best) {
                    best = dist;
                    best_k = k;
                }
            }
            used[best_k] = true;
            s.spectrum_deviation = std::max(s.spectrum_deviation, best);
        }
        for (const auto& e : ed.eigenvalues)
            s.max_imag = std::max(s.max_imag, std::abs(e.imag()));
        rep.max_spectrum_deviation = std::max(rep.max_spectrum_deviation, s.spectrum_deviation);
        rep.min_max_imag = std::min(rep.min_max_imag, s.max_imag);
        rep.samples.push_back(s);
    }
    rep.witnesses_impossibility = rep.min_max_imag > tol.gap;
    return rep;
}

}  // namespace nhqm
