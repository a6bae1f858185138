#pragma once

// Antilinear operators in the canonical representation f -> m * conj(f).
// In this representation the adjoint defined through <V' phi, psi> = <V psi, phi>
// is the plain transpose of the matrix part, and the composition of two
// antilinear maps is the linear operator m1 * conj(m2). Keeping the result
// types distinct (AntilinearOp vs Matrix) makes it impossible to equate a
// linear operator with an antilinear one.

#include "nhqm/core.hpp"

namespace nhqm {

struct AntilinearOp {
    Matrix m;  // action: f |-> m * conj(f)

    static AntilinearOp conjugation(std::size_t n) { return {Matrix::identity(n)}; }
    std::size_t dim() const { return m.rows(); }

    friend bool operator==(const AntilinearOp&, const AntilinearOp&) = default;
};

inline Vector apply(const AntilinearOp& v, const Vector& f) {
    return matrix_apply(v.m, conjugated(f));
}

// transpose of the matrix part; no entrywise conjugation
inline AntilinearOp adjoint(const AntilinearOp& v) { return {transpose(v.m)}; }

// V1 V2 is linear: m1 * conj(m2)
inline Matrix compose_aa(const AntilinearOp& v1, const AntilinearOp& v2) {
    return multiply(v1.m, conjugated(v2.m));
}

// A V (linear after antilinear): matrix part A * m
inline AntilinearOp compose_la(const Matrix& a, const AntilinearOp& v) {
    return {multiply(a, v.m)};
}

// V A: V(A f) = m * conj(A) * conj(f)
inline AntilinearOp compose_al(const AntilinearOp& v, const Matrix& a) {
    return {multiply(v.m, conjugated(a))};
}

inline bool antilinear_equal(const AntilinearOp& v1, const AntilinearOp& v2,
                             double tol_eig = 1e-10) {
    return frobenius_residual(v1.m, v2.m) <= tol_eig;
}

// (V1 V2)' = V2' V1', compared as linear operators.
inline bool anti_adjoint_product_rule_check(const AntilinearOp& v1, const AntilinearOp& v2,
                                            const Tolerances& tol = {}) {
    Matrix lhs = adjoint_dagger(compose_aa(v1, v2));
    Matrix rhs = compose_aa(adjoint(v2), adjoint(v1));
    return frobenius_residual(lhs, rhs) <= tol.eig;
}

// V fixing every vector of a basis is still not the identity: it flips the
// phase of i*b0. Throws NotFixedError if some basis vector is not fixed.
inline bool antilinear_fixes_basis_but_not_identity(const std::vector<Vector>& basis,
                                                    const AntilinearOp& v,
                                                    const Tolerances& tol = {}) {
    if (basis.empty()) throw DimensionError("empty basis");
    for (const auto& b : basis) {
        Vector r = sub(nhqm::apply(v, b), b);
        if (norm(r) > tol.eig * std::max(1.0, norm(b)))
            throw NotFixedError("basis vector is not fixed by V");
    }
    const Vector ib0 = scaled(basis.front(), Complex(0.0, 1.0));
    Vector image = nhqm::apply(v, ib0);
    // antilinearity forces V(i b0) = -i b0
    return norm(sub(image, scaled(ib0, -1.0))) <= tol.eig * std::max(1.0, norm(ib0)) &&
           norm(sub(image, ib0)) > tol.gap;
}

// Self-adjoint antilinear rank-one operator V f = alpha <f, psi> psi with a
// genuinely complex eigenvalue alpha on psi.
inline AntilinearOp rank_one_selfadjoint_example(const Vector& psi, Complex alpha,
                                                 const Tolerances& tol = {}) {
    if (std::abs(norm(psi) - 1.0) > tol.eig)
        throw NormalizationError("rank_one_selfadjoint_example: psi must be unit norm");
    // <f, psi> psi = psi psi^T conj(f)
    const std::size_t n = psi.size();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = alpha * psi[i] * psi[j];
    return {m};
}

struct VSquaredPairReport {
    std::size_t j = 0, k = 0;
    bool orthogonality_required = false;
    double overlap_abs = 0.0;
};

struct VSquaredReport {
    std::vector<VSquaredPairReport> pairs;
    double max_required_overlap = 0.0;   // over pairs with distinct moduli
    double max_vsq_residual = 0.0;       // V^2 phi_j vs |E_j|^2 phi_j
    bool pass = false;
};

// Orthogonality of eigenvectors of an antilinear V is guaranteed only when the
// eigenvalue moduli differ; the mechanism is that V^2 is linear self-adjoint
// with eigenvalues |E_j|^2.
inline VSquaredReport v_squared_orthogonality_check(
    const AntilinearOp& v, const std::vector<std::pair<Vector, Complex>>& pairs,
    const Tolerances& tol = {}) {
    VSquaredReport rep;
    const Matrix vsq = compose_aa(v, v);
    for (const auto& [vec, e] : pairs) {
        Vector r = sub(nhqm::apply(v, vec), scaled(vec, e));
        if (norm(r) > tol.eig * std::max(1.0, norm(vec)))
            throw NotEigenpairError("v_squared_orthogonality_check: pair fails eigen-equation");
        Vector r2 = sub(matrix_apply(vsq, vec), scaled(vec, std::norm(e)));
        rep.max_vsq_residual =
            std::max(rep.max_vsq_residual, norm(r2) / std::max(1.0, norm(vec)));
    }
    for (std::size_t j = 0; j < pairs.size(); ++j)
        for (std::size_t k = j + 1; k < pairs.size(); ++k) {
            VSquaredPairReport pr;
            pr.j = j;
            pr.k = k;
            pr.overlap_abs = std::abs(scalar_product(pairs[j].first, pairs[k].first)) /
                             std::max(1.0, norm(pairs[j].first) * norm(pairs[k].first));
            pr.orthogonality_required =
                std::abs(std::abs(pairs[j].second) - std::abs(pairs[k].second)) > tol.gap;
            if (pr.orthogonality_required)
                rep.max_required_overlap = std::max(rep.max_required_overlap, pr.overlap_abs);
            rep.pairs.push_back(pr);
        }
    rep.pass = rep.max_required_overlap <= tol.eig && rep.max_vsq_residual <= tol.eig;
    return rep;
}

}  // namespace nhqm
