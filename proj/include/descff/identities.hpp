#pragma once

// Appendix verifications: equation of motion, energy-momentum conservation,
// T identification and the odd-generator factorization.

#include <string>
#include <vector>

#include "core.hpp"
#include "element.hpp"
#include "jfunctions.hpp"

namespace descff {

struct IdentityReport {
    std::string name;
    std::string note;  // free-form metadata (e.g. integrals-of-motion correspondence)
    Cplx p, a;
    int N = 0;
    Cplx lhs, rhs;
    double deviation = 0;  // relative
    bool pass = false;

    static IdentityReport make(std::string name, const ModelParams& params, Cplx a, int N,
                               Cplx lhs, Cplx rhs, double tol) {
        IdentityReport r;
        r.name = std::move(name);
        r.p = params.p;
        r.a = a;
        r.N = N;
        r.lhs = lhs;
        r.rhs = rhs;
        double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        r.deviation = std::abs(lhs - rhs) / scale;
        r.pass = r.deviation <= tol;
        return r;
    }
};

// momentum eigenvalues on a multiparticle state (first integrals of motion,
// eigenvalue constant J_1 = -m/2 from ModelParams)
inline Cplx momentum_pz(const std::vector<Cplx>& thetas, const ModelParams& params) {
    Cplx s(0);
    for (const Cplx& th : thetas) s += std::exp(th);
    return params.momentum_constant() * s;
}
inline Cplx momentum_pzbar(const std::vector<Cplx>& thetas, const ModelParams& params) {
    Cplx s(0);
    for (const Cplx& th : thetas) s += std::exp(-th);
    return -params.momentum_constant() * s;
}

// d/da J^g_{N,a}(X) at a = at_a; exact rho-symbolic route for numeric-mode
// elements, 4th-order central differences otherwise.
inline Cplx d_da_j(const Element& g, const std::vector<Cplx>& xs, const ModelParams& params,
                   Cplx at_a) {
    if (g.mode() == CoeffMode::Numeric) {
        auto sym = j_rho(g, xs, params);
        return sym.rho_poly.derivative_a().eval_at_a(at_a);
    }
    const double h = 1e-4;
    auto f = [&](double off) { return j_direct(g, at_a + off, xs, params).value; };
    return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

// equation of motion: S_1 S_{-1} J'_N = (pi / sin pi p) J_{N, p-1/2}, odd N
inline IdentityReport check_eom(const std::vector<Cplx>& xs, const ModelParams& params,
                                double tol = 1e-9) {
    if (xs.size() % 2 == 0) throw domain_error("check_eom: N must be odd");
    Cplx s1 = power_sum(1, xs), sm1 = power_sum(-1, xs);
    Cplx lhs = s1 * sm1 * d_da_j(Element::one(), xs, params, Cplx(-0.5, 0));
    Cplx rhs = kPi / std::sin(kPi * params.p) *
               j_direct(Element::one(), params.p - 0.5, xs, params).value;
    return IdentityReport::make("equation_of_motion", params, Cplx(-0.5, 0), (int)xs.size(), lhs,
                                rhs, tol);
}

// energy-momentum conservation, even N:
//   lim_{a->-1/2} J^{h2_a cbar_{-1}}_{N,a} = (i / 2 sin^2 pi p)
//                  (J^{c_{-1}}_{N,-1/2+p} + J^{c_{-1}}_{N,-1/2-p});
// the left side is taken through the finite rewriting of the limit.
inline IdentityReport check_em_conservation(const std::vector<Cplx>& xs,
                                            const ModelParams& params, double tol = 1e-9) {
    if (xs.size() % 2 == 1) throw domain_error("check_em_conservation: N must be even");
    Cplx lhs(0), rhs(0);
    if (!xs.empty()) {
        Cplx sm1 = power_sum(-1, xs);
        lhs = sm1 * level2_limit_value(xs, params);
        Element c1 = Element::generator(1);
        Cplx jp = j_direct(c1, params.p - 0.5, xs, params).value;
        Cplx jm = j_direct(c1, -params.p - 0.5, xs, params).value;
        Cplx sp = std::sin(kPi * params.p);
        rhs = Cplx(0, 1) / (2.0 * sp * sp) * (jp + jm);
    }
    return IdentityReport::make("em_conservation", params, Cplx(-0.5, 0), (int)xs.size(), lhs, rhs,
                                tol);
}

// T identification, even N:
//   lim_{a->-1/2} J^{h2_a}_{N,a} = (1/sin pi p)(J^{c_{-2}}_{N,-1/2} + (i/pi) S_1^2 J'_N).
// The left side is extrapolated from generic a (the function is even in the
// offset), the right side is the exact finite form.
inline IdentityReport check_T_identification(const std::vector<Cplx>& xs,
                                             const ModelParams& params, double tol = 1e-9) {
    const int n = (int)xs.size();
    Cplx lhs(0);
    if (n % 2 == 1) {
        // both sides vanish for odd N (reflection + periodicity)
        lhs = Cplx(0);
        return IdentityReport::make("T_identification", params, Cplx(-0.5, 0), n, lhs, Cplx(0),
                                    tol);
    }
    // Richardson in delta^2; the nearest singularity of J^{h2_a} in a sits at
    // distance p/2 from -1/2, so the step ladder scales with p
    const double radius = 0.5 * std::abs(params.p);
    std::vector<double> deltas;
    for (int k = 2; k <= 6; ++k) deltas.push_back(radius / double(1 << k));
    std::vector<Cplx> vals;
    for (double d : deltas) {
        Element h2 = h2_element(Cplx(-0.5 + d, 0), params.p);
        vals.push_back(j_direct(h2, Cplx(-0.5 + d, 0), xs, params).value);
    }
    std::vector<double> t2;
    for (double d : deltas) t2.push_back(d * d);
    for (size_t i = 1; i < vals.size(); ++i)
        for (size_t j = vals.size(); j-- > i;)
            vals[j] = vals[j] + (vals[j] - vals[j - 1]) * t2[j] / (t2[j - i] - t2[j]);
    lhs = vals.back();
    Cplx rhs = level2_limit_value(xs, params);
    return IdentityReport::make("T_identification", params, Cplx(-0.5, 0), n, lhs, rhs, tol);
}

// odd generators: J^{c_{-(2n-1)} g} = S_{2n-1}(X) J^g and the antichiral mirror
inline IdentityReport check_odd_generator(const Element& g, int n, const std::vector<Cplx>& xs,
                                          Cplx a, const ModelParams& params, bool antichiral,
                                          double tol = 1e-10) {
    const int m = 2 * n - 1;
    Element ext = antichiral ? (Element::bar_generator(m) * g) : (Element::generator(m) * g);
    Cplx lhs = j_direct(ext, a, xs, params).value;
    Cplx rhs = power_sum(antichiral ? -m : m, xs) * j_direct(g, a, xs, params).value;
    auto rep = IdentityReport::make(antichiral ? "odd_generator_antichiral" : "odd_generator",
                                    params, a, (int)xs.size(), lhs, rhs, tol);
    // c_{1-2n} corresponds to -(1/J_{2n-1}) I_{+-(2n-1)}; the eigenvalue
    // constants J_{2n-1} are known only for n = 1 (J_1 = -m/2), so only the
    // S-factorization is checked here
    rep.note = std::string("corresponds to I_") + (antichiral ? "-" : "+") +
               std::to_string(m) + " up to the eigenvalue normalization";
    return rep;
}

}  // namespace descff
