// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned here on purpose; do not relax them
// without revisiting the criterion they belong to.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nhqm/nhqm.hpp"
#include "support.hpp"

using namespace nhqm;
namespace fs = std::filesystem;

namespace {

constexpr double pi = 3.14159265358979323846;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. biorthogonal invariants on 200 random diagonalizable H, dims 2..10
bool criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(9001);
    double worst = 0.0;
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + it % 9;
        const double cond = 2.0 + double(it % 49);
        auto sample = testsupport::random_diagonalizable(rng, n, 0.1, cond, it % 2 == 0);
        auto sys = build_system(sample.h);
        worst = std::max(worst, check_system(sys, sample.h).max_residual());
    }
    const double elapsed = seconds_since(t0);
    return worst < 1e-9 && elapsed < 10.0;
}

// 2. antilinear algebra: V^2 = 1, V_phi^dagger = V_psi, A.1 contract, product rule
bool criterion_2() {
    std::mt19937_64 rng(9002);
    double worst = 0.0;
    for (int it = 0; it < 25; ++it) {
        const std::size_t n = 2 + it % 7;
        auto sys = build_system(testsupport::random_diagonalizable(rng, n, 0.15, 10.0, true).h);
        auto [v_phi, v_psi] = build_v_ops(sys);
        worst = std::max(worst,
                         frobenius_residual(compose_aa(v_phi, v_phi), Matrix::identity(n)));
        worst = std::max(worst,
                         frobenius_residual(compose_aa(v_psi, v_psi), Matrix::identity(n)));
        worst = std::max(worst, frobenius_residual(adjoint(v_phi).m, v_psi.m));
    }
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 2 + it % 7;
        AntilinearOp v{testsupport::random_matrix(rng, n)};
        AntilinearOp w{testsupport::random_matrix(rng, n)};
        Vector f = testsupport::random_vector(rng, n);
        Vector g = testsupport::random_vector(rng, n);
        const Complex lhs = scalar_product(nhqm::apply(adjoint(v), f), g);
        const Complex rhs = scalar_product(nhqm::apply(v, g), f);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        worst = std::max(worst, frobenius_residual(adjoint_dagger(compose_aa(v, w)),
                                                   compose_aa(adjoint(w), adjoint(v))));
    }
    return worst < 1e-10;
}

// 3. antilinear/linear/metric intertwining relations plus isospectrality and the e-basis
bool criterion_3() {
    std::mt19937_64 rng(9003);
    double worst = 0.0, worst_on = 0.0;
    auto run_checks = [&](const Matrix& h, const BiorthogonalSystem& sys) {
        auto d = build_derived(h, sys);
        worst = std::max(worst, check_antilinear_intertwining(d, sys).max_residual());
        worst = std::max(worst, check_linear_intertwining(d, sys, h).max_residual());
        worst = std::max(worst, check_metric_selfadjointness(d, sys).max_residual());
        worst = std::max(worst, check_isospectrality(d, sys).max_residual());
        worst_on = std::max(worst_on,
                            frobenius_residual(multiply(adjoint_dagger(d.e_basis), d.e_basis),
                                               Matrix::identity(sys.dim())));
    };
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + it % 9;
        auto sample = testsupport::random_diagonalizable(rng, n, 0.15, 15.0, it % 2 == 0);
        run_checks(sample.h, build_system(sample.h));
    }
    for (int it = 0; it < 20; ++it) {
        TwoLevelParams p = testsupport::random_two_level(rng, it % 2 == 0);
        Matrix h = build_h(p);
        run_checks(h, build_system_with_basis(h, closed_form_eigensystem(p).phi_matrix()));
    }
    return worst < 1e-9 && worst_on < 1e-10;
}

// 4. real-spectrum specialization: metric intertwining, sharp/flat self-adjointness, H_phiphi = H
bool criterion_4() {
    std::mt19937_64 rng(9004);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
        const std::size_t n = 2 + it % 6;
        auto sample = testsupport::random_real_spectrum_matrix(rng, n, 0.2, 10.0);
        auto sys = build_system(sample.h);
        const Matrix hd = adjoint_dagger(sample.h);
        worst = std::max(worst, frobenius_residual(multiply(sys.s_psi, sample.h),
                                                   multiply(hd, sys.s_psi)));
        worst = std::max(worst, frobenius_residual(multiply(sys.s_phi, hd),
                                                   multiply(sample.h, sys.s_phi)));
        worst = std::max(worst, frobenius_residual(sharp_adjoint(sample.h, sys), sample.h));
        worst = std::max(worst, frobenius_residual(flat_adjoint(hd, sys), hd));
        auto d = build_derived(sample.h, sys);
        worst = std::max(worst, frobenius_residual(d.h_phiphi, sample.h));
    }
    return worst < 1e-10;
}

// 5. two-level closed forms vs the generic pipeline, 100 draws per regime
bool criterion_5() {
    std::mt19937_64 rng(9005);
    double worst = 0.0;
    for (int regime = 0; regime < 2; ++regime) {
        for (int it = 0; it < 100; ++it) {
            TwoLevelParams p = testsupport::random_two_level(rng, regime == 0);
            Matrix h = build_h(p);
            auto es = closed_form_eigensystem(p);
            auto sys = build_system_with_basis(h, es.phi_matrix());
            auto [sp, sq] = closed_form_metrics(p);
            worst = std::max(worst, frobenius_residual(sys.psi, es.psi_matrix()));
            worst = std::max(worst, frobenius_residual(sys.s_phi, sp));
            worst = std::max(worst, frobenius_residual(sys.s_psi, sq));
            auto d = build_derived(h, sys);
            worst = std::max(worst, frobenius_residual(d.h_phiphi, closed_form_hphiphi(p)));
        }
    }
    return worst < 1e-10;
}

// 6. Das-Greenwood mapping round trip and regime classification grid
bool criterion_6() {
    std::mt19937_64 rng(9006);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    double worst = 0.0;
    int done = 0;
    while (done < 100) {
        DasGreenwoodParams dg;
        dg.r = uni(rng);
        dg.s = uni(rng);
        dg.t = uni(rng);
        dg.theta = uni(rng);
        if (std::abs(dg.s) < 0.1 || std::abs(dg.t) < 0.1) continue;
        if (dg.discriminant() < 1e-3) continue;
        bool usable = true;
        for (int branch : {+1, -1}) {
            TwoLevelParams p;
            try {
                p = map_das_greenwood(dg, branch);
            } catch (const DegenerateParamError&) {
                usable = false;
                break;
            }
            worst = std::max(worst,
                             frobenius_residual(build_h(p), build_das_greenwood_h(dg)));
        }
        if (usable) ++done;
    }
    if (worst >= 1e-10) return false;

    // 101 x 101 (r, theta) grid at s = t = 1
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            DasGreenwoodParams dg;
            dg.r = 2.0 * double(i) / 100.0;
            dg.theta = pi * double(j) / 100.0;
            dg.s = 1.0;
            dg.t = 1.0;
            const Regime reg = classify_regime(dg);
            if (reg == Regime::ExceptionalPoint) continue;  // nothing to cross-check
            if (std::abs(dg.discriminant()) < 1e-6) continue;  // solver gap too small
            auto ed = general_eig(build_das_greenwood_h(dg));
            const double max_imag = std::max(std::abs(ed.eigenvalues[0].imag()),
                                             std::abs(ed.eigenvalues[1].imag()));
            const bool complex_pair = max_imag > 1e-8;
            if (complex_pair != (reg == Regime::Broken)) return false;
        }
    }
    return true;
}

// 7. dynamics: closed forms vs spectral evolution, periodicity, BR benchmark
bool criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(9007);
    double worst = 0.0;
    for (int regime = 0; regime < 2; ++regime) {
        for (int draw = 0; draw < 50; ++draw) {
            TwoLevelParams p = testsupport::random_two_level(rng, regime == 0);
            Matrix h = build_h(p);
            auto sys = build_system_with_basis(h, closed_form_eigensystem(p).phi_matrix());
            EvolutionSpec sp;
            sp.c = {testsupport::random_complex(rng), testsupport::random_complex(rng)};
            sp.d = {testsupport::random_complex(rng), testsupport::random_complex(rng)};
            sp.t_start = 0.0;
            sp.t_end = 20.0;
            sp.n_steps = 2000;
            auto tr = nhqm::trace(h, sys, sp);
            for (std::size_t i = 0; i < tr.times.size(); ++i) {
                ClosedFormSample cf = regime == 0 ? closed_form_br(p, sp, tr.times[i])
                                                  : closed_form_ur(p, sp, tr.times[i]);
                worst = std::max(worst, std::abs(cf.prob - tr.probs[i]));
            }
        }
    }
    if (worst >= 1e-9) return false;

    TwoLevelParams ur;
    ur.alpha = 1.0;
    ur.beta = 1.0;
    ur.e1 = 2.0;
    ur.e2 = 1.0;
    EvolutionSpec sp;
    sp.c = {Complex(1), Complex(1)};
    sp.d = {Complex(1), Complex(0)};
    sp.t_start = 0.0;
    sp.t_end = 10.0;
    sp.n_steps = 1001;
    for (double t : {0.0, 0.7, 3.1, 8.4})
        if (std::abs(closed_form_ur(ur, sp, t).prob -
                     closed_form_ur(ur, sp, t + 2.0 * pi).prob) >= 1e-10)
            return false;

    TwoLevelParams br = ur;
    br.e1 = Complex(1, 1);
    br.e2 = Complex(1, -1);
    Matrix h = build_h(br);
    auto sys = build_system_with_basis(h, closed_form_eigensystem(br).phi_matrix());
    auto tr = nhqm::trace(h, sys, sp);
    if (std::abs(tr.probs.back() - 0.1) > 1e-6) return false;

    TwoLevelParams brneg = br;
    brneg.e1 = Complex(1, -1);
    brneg.e2 = Complex(1, 1);
    Matrix hneg = build_h(brneg);
    auto sysneg = build_system_with_basis(hneg, closed_form_eigensystem(brneg).phi_matrix());
    if (nhqm::trace(hneg, sysneg, sp).probs.back() >= 1e-8) return false;

    return seconds_since(t0) < 5.0;
}

// 8. impossibility witness: spectra survive all sampled similarity transforms
bool criterion_8() {
    std::mt19937_64 rng(9008);
    TwoLevelParams p;
    p.alpha = 0.8;
    p.beta = -0.5;
    p.e1 = Complex(0.4, 1.2);
    p.e2 = Complex(0.4, -1.2);
    Matrix h = build_h(p);
    auto sys = build_system_with_basis(h, closed_form_eigensystem(p).phi_matrix());
    std::vector<Matrix> xs;
    xs.push_back(sys.s_psi_sqrt);
    for (int it = 0; it < 50; ++it)
        xs.push_back(testsupport::random_conditioned(rng, 2, 1.0 + double(it)));
    auto rep = no_selfadjoint_similarity_demo(h, xs);
    return rep.witnesses_impossibility && rep.max_spectrum_deviation < 1e-8;
}

// 9. Appendix pathologies: self-adjoint antilinear V with complex eigenvalues
bool criterion_9() {
    Vector psi = {Complex(0.6), Complex(0.8)};
    const Complex alpha(0.9, 1.7);
    AntilinearOp v = rank_one_selfadjoint_example(psi, alpha);
    if (!antilinear_equal(adjoint(v), v, 1e-14)) return false;
    if (norm(sub(nhqm::apply(v, psi), scaled(psi, alpha))) > 1e-12) return false;

    const Complex z1 = std::polar(1.0, pi / 4.0);
    const Complex z2 = std::polar(1.0, pi / 3.0);
    Vector p1 = scaled(psi, z1);
    Vector p2 = scaled(psi, z2);
    const Complex lam1 = Complex(0, -1) * alpha;
    const Complex lam2 = Complex(-0.5, -std::sqrt(3.0) / 2.0) * alpha;
    if (norm(sub(nhqm::apply(v, p1), scaled(p1, lam1))) > 1e-12) return false;
    if (norm(sub(nhqm::apply(v, p2), scaled(p2, lam2))) > 1e-12) return false;
    if (std::abs(scalar_product(p1, p2) - std::polar(1.0, pi / 12.0)) > 1e-12) return false;

    // distinct moduli force orthogonality through the V^2 mechanism
    Matrix d(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    auto rep = v_squared_orthogonality_check(
        AntilinearOp{d},
        {{{Complex(1), Complex(0)}, Complex(1)}, {{Complex(0), Complex(1)}, Complex(2)}});
    return rep.pass && rep.pairs.size() == 1 && rep.pairs[0].orthogonality_required;
}

// 10. CLI exit codes and byte-stable CSV
bool criterion_10() {
    const std::string cli = NHQM_CLI_PATH;
    const std::string fixtures = NHQM_FIXTURE_DIR;
    auto run = [&](const std::string& args) {
        const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return status == -1 ? -1 : WEXITSTATUS(status);
    };
    if (run("verify --full --config " + fixtures + "/two_level_br.json") != 0) return false;
    if (run("verify --full --config " + fixtures + "/two_level_br_corrupted.json") != 1)
        return false;

    const fs::path a = fs::temp_directory_path() / "nhqm_acceptance_a.csv";
    const fs::path b = fs::temp_directory_path() / "nhqm_acceptance_b.csv";
    if (run("evolve --config " + fixtures + "/two_level_br.json --out " + a.string()) != 0)
        return false;
    if (run("evolve --config " + fixtures + "/two_level_br.json --out " + b.string()) != 0)
        return false;
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string ca = slurp(a), cb = slurp(b);
    fs::remove(a);
    fs::remove(b);
    return !ca.empty() && ca == cb;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*fn)();
    };
    const Criterion criteria[] = {
        {"biorthogonal construction invariants (200 random systems)", criterion_1},
        {"antilinear operator algebra", criterion_2},
        {"intertwining relation suite", criterion_3},
        {"real-spectrum specialization", criterion_4},
        {"two-level closed forms vs pipeline", criterion_5},
        {"Das-Greenwood mapping and regime grid", criterion_6},
        {"dynamics closed forms, periodicity and limits", criterion_7},
        {"no-self-adjoint-similarity witness", criterion_8},
        {"antilinear eigenvalue pathologies", criterion_9},
        {"CLI exit codes and byte-stable CSV", criterion_10},
    };
    int failures = 0;
    int idx = 0;
    for (const auto& c : criteria) {
        ++idx;
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            std::printf("criterion %2d: %-58s FAIL (%s)\n", idx, c.name, e.what());
            ++failures;
            continue;
        }
        std::printf("criterion %2d: %-58s %s\n", idx, c.name, ok ? "pass" : "FAIL");
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
