// Acceptance suite: one line per criterion, exit code = number of failures.
// Usage: descff_acceptance [--criterion K] [--seed S]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <descff/descff.hpp>

using namespace descff;
using Clock = std::chrono::steady_clock;

namespace {

uint64_t g_seed = 20240809;

struct Outcome {
    bool pass;
    std::string detail;
};

double rel(Cplx a, Cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

Cplx rand_pt(std::mt19937_64& g, double lo = 0.5, double hi = 2.0) {
    std::uniform_real_distribution<double> mod(lo, hi), arg(0.0, 2 * kPi);
    return std::polar(mod(g), arg(g));
}

std::vector<Cplx> rand_pts(std::mt19937_64& g, int n) {
    std::vector<Cplx> v;
    for (int i = 0; i < n; ++i) v.push_back(rand_pt(g));
    return v;
}

ModelParams random_params(std::mt19937_64& g) {
    std::uniform_real_distribution<double> pd(0.12, 0.45);
    ModelParams m;
    m.p = Cplx(pd(g), 0);
    return m;
}

Cplx random_generic_a(std::mt19937_64& g, const ModelParams& params) {
    std::uniform_real_distribution<double> ad(0.03, 0.46);
    for (int tries = 0; tries < 100; ++tries) {
        Cplx a(ad(g), 0);
        if (degeneracy_distance(a, params.p) > 0.02) return a;
    }
    return Cplx(0.11, 0);
}

Element random_element(std::mt19937_64& g, int level, int antilevel) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Element e;
    for (const auto& lam : enumerate_partitions(level))
        for (const auto& mu : enumerate_partitions(antilevel))
            e += Element::monomial(lam, mu, Cplx(coef(g), coef(g)));
    return e;
}

// 1. Oracle equivalence: t_vacuum_expectation vs j_direct, 50 random (p,a,X),
//    N <= 8, total runtime capped at 60 s
Outcome crit_oracle() {
    auto t0 = Clock::now();
    std::mt19937_64 g(g_seed + 1);
    std::uniform_int_distribution<int> nd(0, 8);
    double worst = 0;
    for (int it = 0; it < 50; ++it) {
        ModelParams params = random_params(g);
        Cplx a = random_generic_a(g, params);
        auto xs = sample_annulus(g, nd(g), params);
        Cplx lhs = t_vacuum_expectation(xs, a, params);
        Cplx rhs = j_direct(Element::one(), a, xs, params).value;
        worst = std::max(worst, rel(lhs, rhs));
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    char buf[128];
    std::snprintf(buf, sizeof buf, "max rel dev %.2e (tol 1e-9, 50 samples, N<=8, %.2fs/60s)",
                  worst, secs);
    return {worst <= 1e-9 && secs <= 60.0, buf};
}

// 2. Closed-form level-2 J functions at 20 random points, 1e-12
Outcome crit_level2_closed_forms() {
    std::mt19937_64 g(g_seed + 2);
    double worst = 0;
    for (int it = 0; it < 20; ++it) {
        ModelParams params = random_params(g);
        Cplx a = random_generic_a(g, params);
        Cplx x1 = rand_pt(g), x2 = rand_pt(g);
        Cplx ca = std::cos(kPi * a), s2a = std::sin(2.0 * kPi * a), sp = std::sin(kPi * params.p);
        Cplx j11 = j_direct(h11_element(), a, {x1, x2}, params).value;
        worst = std::max(worst, rel(j11, 4.0 * ca * ca * (x1 + x2) * (x1 + x2)));
        Cplx j2 = j_direct(Element::generator(2), a, {x1, x2}, params).value;
        worst = std::max(worst, rel(j2, Cplx(0, 2) * s2a * (x1 + x2) * (x1 + x2) +
                                            Cplx(0, 4) * (sp - s2a) * x1 * x2));
        Cplx jh2 = j_direct(h2_element(a, params.p), a, {x1, x2}, params).value;
        worst = std::max(worst, rel(jh2, Cplx(0, 4) * x1 * x2));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max rel dev %.2e (tol 1e-12, 20 points)", worst);
    return {worst <= 1e-12, buf};
}

// 3. Recurrences vs direct: exponential N <= 9, level-2 N <= 7, 1e-9
Outcome crit_recurrences() {
    std::mt19937_64 g(g_seed + 3);
    double worst = 0;
    ModelParams params = random_params(g);
    Cplx a = random_generic_a(g, params);
    for (int n : {2, 4, 6, 9}) {
        auto xs = sample_annulus(g, n, params);
        worst = std::max(worst, rel(recur_exponential(a, xs, params),
                                    j_direct(Element::one(), a, xs, params).value));
    }
    for (int n : {2, 3, 5, 7}) {
        auto xs = sample_annulus(g, n, params);
        worst = std::max(worst, rel(recur_level2(a, xs, params),
                                    j_direct(h2_element(a, params.p), a, xs, params).value));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max rel dev %.2e (tol 1e-9; exp N<=9, level-2 N<=7)", worst);
    return {worst <= 1e-9, buf};
}

// 4. Kinematic structure: residue oracle, sum rule, regularity
Outcome crit_kinematic() {
    std::mt19937_64 g(g_seed + 4);
    ModelParams params = random_params(g);
    Cplx a = random_generic_a(g, params);
    double worst_res = 0;
    for (const Element& e : {Element::one(), Element::generator(2)}) {
        auto xs = rand_pts(g, 2);
        Cplx x = rand_pt(g);
        auto probe = [&](double d) {
            Cplx xp = -x * (1.0 + d);
            std::vector<Cplx> full = xs;
            full.push_back(x);
            full.push_back(xp);
            return (xp + x) * j_direct(e, a, full, params).value / x;
        };
        Cplx extrap = 2.0 * probe(5e-5) - probe(1e-4);
        worst_res = std::max(worst_res, rel(extrap, residue_kinematic(e, a, xs, x, params)));
    }
    double worst_sum = 0;
    for (int n : {4, 6}) {
        auto xs = sample_annulus(g, n - 1, params);
        Cplx sum(0);
        double scale = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            std::vector<Cplx> rest;
            for (size_t j = 0; j < xs.size(); ++j)
                if (j != i) rest.push_back(xs[j]);
            Cplx ri = residue_kinematic(Element::one(), a, rest, xs[i], params);
            sum += ri;
            scale += std::abs(ri);
        }
        worst_sum = std::max(worst_sum, std::abs(sum) / (scale + 1e-300));
    }
    // bounded double-limit probe at a coincident point
    auto xs = rand_pts(g, 2);
    auto eval = [&](double eps) {
        std::vector<Cplx> v = xs;
        v.push_back(xs[0] * (1.0 + eps));
        return j_direct(Element::generator(2), a, v, params).value;
    };
    double d1 = std::abs(eval(1e-3) - eval(1e-4));
    double d2 = std::abs(eval(1e-4) - eval(1e-5));
    bool regular = d2 < d1;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "residue oracle %.2e (tol 1e-6); sum rule %.2e (tol 1e-10); regular %s",
                  worst_res, worst_sum, regular ? "yes" : "no");
    return {worst_res <= 1e-6 && worst_sum <= 1e-10 && regular, buf};
}

// 5. Dimension counting for P and Q functionals, n <= 6
Outcome crit_ranks() {
    std::mt19937_64 g(g_seed + 5);
    ModelParams params;
    params.p = Cplx(0.31, 0);
    const long long expect[] = {1, 1, 2, 3, 5, 7, 11};
    bool ok = true;
    std::string detail = "p(n):";
    for (int n = 0; n <= 6; ++n) {
        int rp = level_rank_p(n, params, std::max(2, 2 * n), g);
        int rq = level_rank_q(n, params, std::max(2, 2 * n), g);
        ok = ok && rp == expect[n] && rq == expect[n];
        detail += " " + std::to_string(rp) + "/" + std::to_string(rq);
    }
    detail += " vs 1 1 2 3 5 7 11";
    return {ok, detail};
}

// 6. Reflection: rho-palindromy, solved maps at levels 1-4, self-dual level 2
Outcome crit_reflection() {
    std::mt19937_64 g(g_seed + 6);
    ModelParams params;
    params.p = Cplx(0.31, 0);
    Cplx a(0.13, 0);
    double worst_pal = 0;
    for (int n = 1; n <= 8; ++n) {
        auto xs = sample_annulus(g, n, params);
        auto sym = j_rho(Element::one(), xs, params);
        worst_pal = std::max(worst_pal,
                             sym.rho_poly.palindromy_defect() / (1.0 + sym.rho_poly.max_abs()));
    }
    double worst_res = 0, worst_inv = 0, worst_h2 = 0;
    for (int lvl = 1; lvl <= 4; ++lvl) {
        auto sol = solve_reflection(lvl, a, params, lvl + 4, 4, g_seed + 60 + lvl);
        auto solm = solve_reflection(lvl, -a, params, lvl + 4, 4, g_seed + 70 + lvl);
        worst_res = std::max({worst_res, sol.residual, solm.residual});
        Matrix<Cplx> prod = sol.matrix * solm.matrix;
        for (size_t i = 0; i < sol.basis.size(); ++i)
            for (size_t j = 0; j < sol.basis.size(); ++j)
                worst_inv = std::max(worst_inv, std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
        if (lvl == 2) {
            Element mapped = apply_reflection(sol, h2_element(a, params.p));
            auto cm = coefficients_in_basis(mapped, sol.basis);
            auto cw = coefficients_in_basis(h2_element(-a, params.p), sol.basis);
            for (size_t j = 0; j < cm.size(); ++j)
                worst_h2 = std::max(worst_h2, std::abs(cm[j] - cw[j]));
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "palindromy %.2e (1e-10); residual %.2e (1e-8); involution %.2e (1e-7); "
                  "h2 map %.2e (1e-8)",
                  worst_pal, worst_res, worst_inv, worst_h2);
    return {worst_pal <= 1e-10 && worst_res <= 1e-8 && worst_inv <= 1e-7 && worst_h2 <= 1e-8,
            buf};
}

// 7. Periodicity and cluster factorization
Outcome crit_periodicity_cluster() {
    std::mt19937_64 g(g_seed + 7);
    ModelParams params = random_params(g);
    Cplx a = random_generic_a(g, params);
    double worst_per = 0;
    for (int n : {1, 2, 3, 4, 5, 6}) {
        Element e = random_element(g, 2, 1);
        auto xs = rand_pts(g, n);
        Cplx lhs = j_direct(e, a + 1.0, xs, params).value;
        Cplx rhs = j_direct(e, a, xs, params).value * ((n % 2 == 0) ? 1.0 : -1.0);
        worst_per = std::max(worst_per, rel(lhs, rhs));
    }
    auto xs = rand_pts(g, 2);
    auto xsp = rand_pts(g, 2);
    double dev = verify_cluster(h11_element(), Element::generator(2), a, xs, xsp, 30.0, params);
    char buf[128];
    std::snprintf(buf, sizeof buf, "periodicity %.2e (1e-10); cluster at L=30 %.2e (1e-8)",
                  worst_per, dev);
    return {worst_per <= 1e-10 && dev <= 1e-8, buf};
}

// 8. Appendix identities
Outcome crit_appendix() {
    std::mt19937_64 g(g_seed + 8);
    double worst_eom = 0, worst_em = 0, worst_t = 0;
    for (int it = 0; it < 10; ++it) {
        ModelParams params = random_params(g);
        for (int n : {1, 3, 5})
            worst_eom = std::max(worst_eom, check_eom(rand_pts(g, n), params, 1.0).deviation);
        for (int n : {0, 2, 4})
            worst_em =
                std::max(worst_em, check_em_conservation(rand_pts(g, n), params, 1.0).deviation);
        if (it < 3)
            for (int n : {2, 4})
                worst_t = std::max(worst_t,
                                   check_T_identification(rand_pts(g, n), params, 1.0).deviation);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "eom %.2e; em %.2e; T-ident %.2e (all tol 1e-8)", worst_eom,
                  worst_em, worst_t);
    return {worst_eom <= 1e-8 && worst_em <= 1e-8 && worst_t <= 1e-8, buf};
}

// 9. Special functions: G(theta) two representations; G_a = R_a G_{-a}
Outcome crit_special() {
    std::mt19937_64 g(g_seed + 9);
    QuadratureSpec spec;
    ModelParams p25;
    p25.p = Cplx(0.25, 0);
    double worst_g = 0;
    std::uniform_real_distribution<double> thd(0.3, 3.5);
    for (int it = 0; it < 10; ++it) {
        Cplx th(thd(g), 0);
        worst_g = std::max(worst_g, rel(kink_g_rep(1, th, p25, spec), kink_g_rep(2, th, p25, spec)));
    }
    ModelParams p3;
    p3.p = Cplx(0.3, 0);
    double worst_v = 0;
    for (double av : {0.1, 0.2, 0.3}) {
        // a = 0.3 sits exactly on the Gamma pole lattice of R_a (a = p); the
        // identity is checked there as a limit from generic points, following
        // the source's own stance on exceptional values.
        std::vector<Cplx> points;
        if (std::abs(av - p3.p.real()) < 1e-12)
            points = {Cplx(av - 1e-3, 0), Cplx(av + 1e-3, 0)};
        else
            points = {Cplx(av, 0)};
        for (Cplx a : points) {
            Cplx lhs = vev_g(a, p3, spec);
            Cplx rhs = reflection_const(a, p3) * vev_g(-a, p3, spec);
            worst_v = std::max(worst_v, rel(lhs, rhs));
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "G(theta) reps %.2e (1e-6); G_a = R_a G_-a %.2e (1e-6; a=0.3 as limit)",
                  worst_g, worst_v);
    return {worst_g <= 1e-6 && worst_v <= 1e-6, buf};
}

// 10. Fock N=0 closed form
Outcome crit_tilde_closed_form() {
    std::mt19937_64 g(g_seed + 10);
    double worst = 0;
    for (int it = 0; it < 5; ++it) {
        ModelParams params = random_params(g);
        Cplx a = random_generic_a(g, params);
        Cplx sp = std::sin(kPi * params.p), s2a = std::sin(2.0 * kPi * a);
        Cplx want = 1.0 / (sp * sp * (sp * sp - s2a * s2a));
        Cplx got = matrix_element_tilde(h2_element(a, params.p), h2_element(-a, params.p), {}, a,
                                        params);
        worst = std::max(worst, rel(got, want));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max rel dev %.2e (tol 1e-10)", worst);
    return {worst <= 1e-10, buf};
}

// 11. W-residue identity, N <= 4, with Richardson stability
Outcome crit_w_residue() {
    std::mt19937_64 g(g_seed + 11);
    ModelParams params;
    params.p = Cplx(0.29, 0);
    double worst = 0, worst_rich = 0;
    for (int n : {0, 2, 4}) {
        auto xs = rand_pts(g, n);
        auto [lhs, rhs] = w_residue_check(xs, params, 1e-3, 64);
        worst = std::max(worst, rel(lhs, rhs));
        auto [lhs2, rhs2] = w_residue_check(xs, params, 5e-4, 64);
        worst_rich = std::max(worst_rich, std::abs(lhs - lhs2) / (1.0 + std::abs(lhs)));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "identity %.2e (1e-5); radius-halving shift %.2e (1e-6)",
                  worst, worst_rich);
    return {worst <= 1e-5 && worst_rich <= 1e-6, buf};
}

// 12. Kink layer: chain equation and PQrel on 50 random instances
Outcome crit_kink() {
    std::mt19937_64 g(g_seed + 12);
    double worst_chain = 0, worst_pq = 0;
    for (int it = 0; it < 50; ++it) {
        ModelParams params = random_params(g);
        std::uniform_int_distribution<int> lvl(1, 4);
        Element h = random_element(g, lvl(g), 0);
        auto xs = rand_pts(g, 2);
        auto zs = rand_pts(g, 1);
        Cplx defect = chain_defect(h, xs, zs, rand_pt(g), params);
        worst_chain =
            std::max(worst_chain, std::abs(defect) / (1.0 + std::abs(q_eval(h, xs, zs, params))));
        auto r = pq_consistency(h, rand_pts(g, 1), rand_pts(g, 1), params, 1.0);
        worst_pq = std::max(worst_pq, r.deviation);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "chain %.2e; PQrel %.2e (tol 1e-12, 50 instances)",
                  worst_chain, worst_pq);
    return {worst_chain <= 1e-12 && worst_pq <= 1e-12, buf};
}

// 13. Section-6 level-2 worked example
Outcome crit_section6() {
    ModelParams params;
    params.p = Cplx(0.31, 0);
    Cplx a(0.17, 0);
    auto sol = solve_x_level2(a, params);
    // as stated: the solved element should be proportional to pi_R(h^(2)_a),
    // i.e. v/u = -i tan(pi a). Measured: the solve carries a nonzero
    // c_{-1}^2 component on top of the h^(2) family (see decisions ledger).
    Cplx ratio = sol.v / sol.u;
    Cplx want = -Cplx(0, 1) * std::tan(kPi * a);
    double prop_defect = std::abs(ratio - want);
    bool pass = sol.reduction_ok && prop_defect <= 1e-9;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "reduction %s; proportionality defect |v/u + i tan(pi a)| = %.3e (tol 1e-9)",
                  sol.reduction_ok ? "ok" : "FAILED", prop_defect);
    return {pass, buf};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
        if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) g_seed = std::strtoull(argv[++i], nullptr, 10);
    }
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries = {
        {1, "oracle equivalence (free-field vs subset sum)", crit_oracle},
        {2, "closed-form level-2 J functions", crit_level2_closed_forms},
        {3, "recurrence equivalence", crit_recurrences},
        {4, "kinematic pole structure", crit_kinematic},
        {5, "dimension counting (P and Q ranks)", crit_ranks},
        {6, "reflection maps", crit_reflection},
        {7, "periodicity and cluster factorization", crit_periodicity_cluster},
        {8, "appendix identities (eom, em, T)", crit_appendix},
        {9, "special functions (G(theta), VEV reflection)", crit_special},
        {10, "Fock N=0 closed form", crit_tilde_closed_form},
        {11, "W-residue identity", crit_w_residue},
        {12, "kink layer (chain, PQrel)", crit_kink},
        {13, "section-6 level-2 worked example", crit_section6},
    };
    int fails = 0;
    for (const auto& e : entries) {
        if (only && e.id != only) continue;
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("[%s] %2d %-48s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", e.id, e.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++fails;
    }
    return fails;
}
