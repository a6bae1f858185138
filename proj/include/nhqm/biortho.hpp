#pragma once

// Biorthogonal eigensystem of a diagonalizable H: paired bases {phi_k},
// {psi_k} with psi^dagger phi = 1, the metric operators S_phi = Phi Phi^dagger
// and S_psi = S_phi^{-1}, their positive square roots, the deformed inner
// products they induce, and the flat/sharp adjoints.

#include "nhqm/antilinear.hpp"
#include "nhqm/core.hpp"
#include "nhqm/eig.hpp"
#include "nhqm/report.hpp"

namespace nhqm {

struct BiorthogonalSystem {
    std::vector<Complex> eigenvalues;
    Matrix phi;          // k-th column phi_k
    Matrix psi;          // k-th column psi_k, psi^dagger = phi^{-1}
    Matrix s_phi;        // phi phi^dagger, Hermitian positive definite
    Matrix s_psi;        // psi psi^dagger = s_phi^{-1}
    Matrix s_phi_sqrt;
    Matrix s_psi_sqrt;

    std::size_t dim() const { return phi.rows(); }
};

namespace detail {

inline BiorthogonalSystem assemble_system(const Matrix& h, std::vector<Complex> eigenvalues,
                                          const Matrix& phi, const Tolerances& tol) {
    BiorthogonalSystem sys;
    sys.eigenvalues = std::move(eigenvalues);
    sys.phi = phi;
    const double cond = cond2(phi, tol);
    if (!(cond < tol.cond_max))
        throw IllConditionedBasisError("build_system: eigenvector basis too ill-conditioned");
    sys.psi = adjoint_dagger(inverse(phi, tol));
    sys.s_phi = multiply(sys.phi, adjoint_dagger(sys.phi));
    sys.s_psi = multiply(sys.psi, adjoint_dagger(sys.psi));
    sys.s_phi_sqrt = positive_sqrt(sys.s_phi, tol);
    sys.s_psi_sqrt = inverse(sys.s_phi_sqrt, tol);

    // left-eigenvector consistency: H^dagger psi_k = conj(E_k) psi_k
    const Matrix hdag = adjoint_dagger(h);
    const double scale = std::max(1.0, frobenius_norm(h));
    for (std::size_t k = 0; k < sys.dim(); ++k) {
        Vector pk = sys.psi.column(k);
        Vector r = sub(matrix_apply(hdag, pk), scaled(pk, std::conj(sys.eigenvalues[k])));
        if (norm(r) > 1e3 * tol.eig * scale * norm(pk))
            throw ConstructionError("build_system: H^dagger psi_k != conj(E_k) psi_k");
    }
    return sys;
}

}  // namespace detail

inline BiorthogonalSystem build_system(const Matrix& h, const Tolerances& tol = {}) {
    EigenDecomposition ed = general_eig(h, tol);
    return detail::assemble_system(h, ed.eigenvalues, ed.right_vectors, tol);
}

// Same construction but with caller-supplied eigenvector columns (e.g. the
// closed-form two-level basis, which is deliberately not unit-normalized).
inline BiorthogonalSystem build_system_with_basis(const Matrix& h, const Matrix& phi,
                                                  const Tolerances& tol = {}) {
    if (!h.square() || phi.rows() != h.rows() || !phi.square())
        throw DimensionError("build_system_with_basis: shape mismatch");
    const std::size_t n = h.rows();
    const double scale = std::max(1.0, frobenius_norm(h));
    std::vector<Complex> lam(n);
    for (std::size_t k = 0; k < n; ++k) {
        Vector col = phi.column(k);
        const double cn = norm(col);
        if (cn == 0.0) throw NormalizationError("build_system_with_basis: zero column");
        Vector img = matrix_apply(h, col);
        lam[k] = scalar_product(col, img) / scalar_product(col, col);
        Vector r = sub(img, scaled(col, lam[k]));
        if (norm(r) > 1e3 * tol.eig * scale * cn)
            throw NotEigenpairError("build_system_with_basis: column is not an eigenvector");
    }
    return detail::assemble_system(h, std::move(lam), phi, tol);
}

// Deformed inner products of the two metric spaces.
inline Complex inner_phi(const Vector& f, const Vector& g, const BiorthogonalSystem& sys) {
    return scalar_product(matrix_apply(sys.s_phi, f), g);
}
inline Complex inner_psi(const Vector& f, const Vector& g, const BiorthogonalSystem& sys) {
    return scalar_product(matrix_apply(sys.s_psi, f), g);
}

// flat: adjoint w.r.t. <.,.>_phi;  sharp: adjoint w.r.t. <.,.>_psi.
inline Matrix flat_adjoint(const Matrix& x, const BiorthogonalSystem& sys) {
    return multiply(sys.s_psi, multiply(adjoint_dagger(x), sys.s_phi));
}
inline Matrix sharp_adjoint(const Matrix& x, const BiorthogonalSystem& sys) {
    return multiply(sys.s_phi, multiply(adjoint_dagger(x), sys.s_psi));
}
inline AntilinearOp flat_adjoint(const AntilinearOp& v, const BiorthogonalSystem& sys) {
    return compose_la(sys.s_psi, compose_al(adjoint(v), sys.s_phi));
}
inline AntilinearOp sharp_adjoint(const AntilinearOp& v, const BiorthogonalSystem& sys) {
    return compose_la(sys.s_phi, compose_al(adjoint(v), sys.s_psi));
}

// Residual table for all structural invariants of a system.
inline ResidualReport check_system(const BiorthogonalSystem& sys, const Matrix& h,
                                   const Tolerances& tol = {}) {
    ResidualReport rep;
    const std::size_t n = sys.dim();
    const Matrix id = Matrix::identity(n);

    rep.add("biorthogonality psi^d phi = 1",
            frobenius_residual(multiply(adjoint_dagger(sys.psi), sys.phi), id), tol.eig);
    rep.add("resolution phi psi^d = 1",
            frobenius_residual(multiply(sys.phi, adjoint_dagger(sys.psi)), id), tol.eig);
    rep.add("resolution psi phi^d = 1",
            frobenius_residual(multiply(sys.psi, adjoint_dagger(sys.phi)), id), tol.eig);
    rep.add("S_phi S_psi = 1", frobenius_residual(multiply(sys.s_phi, sys.s_psi), id),
            tol.eig);
    rep.add("S_phi^1/2 squared", frobenius_residual(multiply(sys.s_phi_sqrt, sys.s_phi_sqrt),
                                                    sys.s_phi),
            tol.eig);
    rep.add("S_psi^1/2 = (S_phi^1/2)^-1",
            frobenius_residual(multiply(sys.s_phi_sqrt, sys.s_psi_sqrt), id), tol.eig);

    double metric_action = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        Vector pk = sys.phi.column(k), qk = sys.psi.column(k);
        metric_action = std::max(
            metric_action, norm(sub(matrix_apply(sys.s_phi, qk), pk)) / std::max(1.0, norm(pk)));
        metric_action = std::max(
            metric_action, norm(sub(matrix_apply(sys.s_psi, pk), qk)) / std::max(1.0, norm(qk)));
    }
    rep.add("metric action S_phi psi_k = phi_k, S_psi phi_k = psi_k", metric_action, tol.eig);

    double eig_res = 0.0;
    const double scale = std::max(1.0, frobenius_norm(h));
    for (std::size_t k = 0; k < n; ++k) {
        Vector pk = sys.phi.column(k);
        eig_res = std::max(eig_res, norm(sub(matrix_apply(h, pk),
                                             scaled(pk, sys.eigenvalues[k]))) /
                                        (scale * std::max(1.0, norm(pk))));
    }
    rep.add("H phi_k = E_k phi_k", eig_res, tol.eig);
    return rep;
}

}  // namespace nhqm
