#pragma once

// Polynomial layer of the kink sector: constants K_n, the Q functionals of the
// rescaled generators, the chain equation and the breather-kink relation.

#include <vector>

#include "algebra.hpp"
#include "core.hpp"
#include "element.hpp"
#include "identities.hpp"
#include "partition.hpp"

namespace descff {

// K_n = 2 i^{1-n} sin(pi p n / 2)
inline Cplx kink_constant(int n, const ModelParams& params) {
    if (n < 1) throw domain_error("kink_constant: n must be >= 1");
    return 2.0 * std::pow(Cplx(0, 1), 1 - n) * std::sin(kPi * params.p * double(n) / 2.0);
}

// K_h = prod K_m^{k_m} over the parts of the partition
inline Cplx kink_normalization(const Partition& lam, const ModelParams& params) {
    Cplx k(1);
    for (int m : lam.parts()) k *= kink_constant(m, params);
    return k;
}

// Q^h_{N,M}(X, Z) = K_h^{-1} prod_{odd m} S_m^{k_m}(X)
//                          prod_{even m=2r} (S_{2r}(X) + 2(-1)^{r-1} S_{2r}(Z))^{k_{2r}},
// extended linearly over multi-term chiral elements.
inline Cplx q_eval(const Element& h, const std::vector<Cplx>& xs, const std::vector<Cplx>& zs,
                   const ModelParams& params) {
    if (!h.purely_chiral()) throw domain_error("q_eval expects a chiral element");
    h.require_numeric("q_eval");
    Cplx total(0);
    for (auto& [key, coeff] : h.terms()) {
        Cplx term = coeff.coeff(0) / kink_normalization(key.first, params);
        for (int m : key.first.parts()) {
            if (m % 2 == 1) {
                term *= power_sum(m, xs);
            } else {
                int r = m / 2;
                double sgn = (r % 2 == 1) ? 1.0 : -1.0;  // (-1)^{r-1}
                Cplx sz = zs.empty() ? Cplx(0) : power_sum(m, zs);
                term *= power_sum(m, xs) + 2.0 * sgn * sz;
            }
        }
        total += term;
    }
    return total;
}

// chain equation residual: Q(X,x,-x | Z, ix) - Q(X | Z)
inline Cplx chain_defect(const Element& h, const std::vector<Cplx>& xs,
                         const std::vector<Cplx>& zs, Cplx x, const ModelParams& params) {
    std::vector<Cplx> x2 = xs;
    x2.push_back(x);
    x2.push_back(-x);
    std::vector<Cplx> z2 = zs;
    z2.push_back(Cplx(0, 1) * x);
    return q_eval(h, x2, z2, params) - q_eval(h, xs, zs, params);
}

// P(X_- | X_+) = Q_{2N,N}(-i w^{1/2} X, i w^{-1/2} X | w^{-1/2} X_-, w^{1/2} X_+)
inline IdentityReport pq_consistency(const Element& h, const std::vector<Cplx>& x_minus,
                                     const std::vector<Cplx>& x_plus, const ModelParams& params,
                                     double tol = 1e-12) {
    Cplx lhs = eval_p(h, x_minus, x_plus);
    const Cplx sw = std::sqrt(params.omega());
    std::vector<Cplx> xs, zs;
    for (const Cplx& x : x_minus) {
        xs.push_back(-Cplx(0, 1) * sw * x);
        xs.push_back(Cplx(0, 1) / sw * x);
        zs.push_back(x / sw);
    }
    for (const Cplx& x : x_plus) {
        xs.push_back(-Cplx(0, 1) * sw * x);
        xs.push_back(Cplx(0, 1) / sw * x);
        zs.push_back(sw * x);
    }
    Cplx rhs = q_eval(h, xs, zs, params);
    return IdentityReport::make("pq_consistency", params, Cplx(0, 0),
                                (int)(x_minus.size() + x_plus.size()), lhs, rhs, tol);
}

// kink-sector rank of the level-n Q functionals (same generating function chi)
inline int level_rank_q(int n, const ModelParams& params, int num_vars, std::mt19937_64& rng) {
    RankFunctional f = [&params](const Partition& lam, const std::vector<Cplx>& pts) {
        Element mono = Element::monomial(lam, Partition{}, Cplx(1));
        std::vector<Cplx> xs(pts.begin(), pts.begin() + pts.size() / 2);
        std::vector<Cplx> zs(pts.begin() + pts.size() / 2, pts.end());
        return q_eval(mono, xs, zs, params);
    };
    return level_rank(n, params, num_vars, rng, f);
}

}  // namespace descff
