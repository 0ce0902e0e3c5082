#pragma once

// Power sums, the symmetric functionals P^g and the rank/dimension checks of
// the descendant algebra.

#include <map>
#include <random>
#include <span>
#include <vector>

#include "core.hpp"
#include "element.hpp"
#include "linalg.hpp"
#include "partition.hpp"

namespace descff {

// S_r(X) = sum x_i^r; r may be negative (all x_i nonzero then).
template <class C>
C power_sum(int r, std::span<const C> xs) {
    if (r == 0) throw domain_error("power_sum: order must be nonzero");
    C total(0);
    for (const C& x : xs) {
        if (r < 0 && abs(x) == decltype(abs(x))(0))
            throw domain_error("power_sum: zero entry with negative order");
        total += pow(x, r);
    }
    return total;
}

template <class C>
C power_sum(int r, const std::vector<C>& xs) {
    return power_sum<C>(r, std::span<const C>(xs));
}

namespace detail {

// Cached power sums of the two argument lists for the degrees an element needs.
template <class C> struct PowerSumTable {
    std::map<int, C> sm;  // S_m(Xm), positive m, and S_{-m}(Xm) stored at key -m
    std::map<int, C> sp;  // same for Xp

    template <class It>
    static PowerSumTable build(It xm_begin, It xm_end, It xp_begin, It xp_end,
                               const std::set<int>& chiral, const std::set<int>& antichiral) {
        PowerSumTable t;
        auto accumulate = [](It b, It e, int r) {
            C s(0);
            for (It it = b; it != e; ++it) {
                if (r < 0 && abs(*it) == decltype(abs(*it))(0))
                    throw domain_error("eval_p: zero coordinate with antichiral content");
                s += pow(*it, r);
            }
            return s;
        };
        for (int m : chiral) {
            t.sm[m] = accumulate(xm_begin, xm_end, m);
            t.sp[m] = accumulate(xp_begin, xp_end, m);
        }
        for (int m : antichiral) {
            t.sm[-m] = accumulate(xm_begin, xm_end, -m);
            t.sp[-m] = accumulate(xp_begin, xp_end, -m);
        }
        return t;
    }

    // P^{c_{-m}} = S_m(Xm) - (-1)^m S_m(Xp)
    C chiral_factor(int m) const {
        C sign = (m % 2 == 0) ? C(1) : C(-1);
        return sm.at(m) - sign * sp.at(m);
    }
    // P^{cbar_{-m}} = S_{-m}(Xp) - (-1)^m S_{-m}(Xm)
    C antichiral_factor(int m) const {
        C sign = (m % 2 == 0) ? C(1) : C(-1);
        return sp.at(-m) - sign * sm.at(-m);
    }
};

// P^g from a prebuilt power-sum table; rho-Laurent coefficients are folded in
// when `rho` is supplied, otherwise they must be numeric (degree 0).
template <class R>
complex_t<R> eval_p_from_table(const BasicElement<R>& g,
                               const PowerSumTable<complex_t<R>>& table,
                               const complex_t<R>* rho = nullptr) {
    using C = complex_t<R>;
    C total(0);
    for (auto& [key, coeff] : g.terms()) {
        C term = rho ? coeff.eval(*rho) : coeff.coeff(0);
        if (!rho && g.mode() == CoeffMode::RhoPoly)
            throw domain_error("rho-polynomial coefficients need a rho value");
        for (int m : key.first.parts()) term *= table.chiral_factor(m);
        for (int m : key.second.parts()) term *= table.antichiral_factor(m);
        total += term;
    }
    return total;
}

}  // namespace detail

// P^g(Xm | Xp): multiplicative over monomial factors, linear over terms.
template <class R>
complex_t<R> eval_p(const BasicElement<R>& g, const std::vector<complex_t<R>>& xm,
                    const std::vector<complex_t<R>>& xp) {
    auto table = detail::PowerSumTable<complex_t<R>>::build(
        xm.begin(), xm.end(), xp.begin(), xp.end(), g.chiral_degrees(), g.antichiral_degrees());
    if (g.mode() == CoeffMode::RhoPoly)
        throw domain_error("eval_p: rho-polynomial element requires at_a() first");
    return detail::eval_p_from_table(g, table);
}

// Kinematic chain P(X,-x | x,Y) = P(X | Y), true for every element of A (x) Abar.
template <class R>
bool check_kinematic_chain(const BasicElement<R>& g, std::vector<complex_t<R>> xm,
                           complex_t<R> x, std::vector<complex_t<R>> xp, R tol = R(1e-10)) {
    using C = complex_t<R>;
    C base = eval_p(g, xm, xp);
    std::vector<C> xm2 = xm, xp2;
    xm2.push_back(-x);
    xp2.push_back(x);
    xp2.insert(xp2.end(), xp.begin(), xp.end());
    C chained = eval_p(g, xm2, xp2);
    R scale = std::max({abs(base), abs(chained), R(1)});
    return abs(base - chained) <= tol * scale;
}

// Functional used by the rank checks: maps a basis monomial plus a sample point
// set to a number. The breather sector uses eval_p; the kink sector passes its
// own Q-functional.
using RankFunctional = std::function<Cplx(const Partition&, const std::vector<Cplx>&)>;

// Numerical rank of the evaluation matrix of all level-n chiral monomials over
// random sample points; p(n) for generic parameters (Theorem on characters).
inline int level_rank(int n, const ModelParams& params, int num_vars, std::mt19937_64& rng,
                      const RankFunctional& functional, int extra_samples = 5) {
    if (num_vars < 2 * n && n > 0)
        throw domain_error("level_rank: need num_vars >= 2n for functional independence");
    auto basis = enumerate_partitions(n);
    const int rows = (int)basis.size() + extra_samples;
    Matrix<Cplx> M(rows, basis.size());
    for (int s = 0; s < rows; ++s) {
        auto pts = sample_annulus(rng, num_vars, params);
        for (size_t j = 0; j < basis.size(); ++j) M(s, j) = functional(basis[j], pts);
    }
    // singular values below tolerance * sigma_max count as zero
    return numerical_rank(M, std::max(params.tolerance, 1e-12));
}

// Breather (P-functional) rank: splits the sample points evenly into Xm|Xp.
inline int level_rank_p(int n, const ModelParams& params, int num_vars, std::mt19937_64& rng) {
    RankFunctional f = [](const Partition& lam, const std::vector<Cplx>& pts) {
        Element mono = Element::monomial(lam, Partition{}, Cplx(1));
        std::vector<Cplx> xm(pts.begin(), pts.begin() + pts.size() / 2);
        std::vector<Cplx> xp(pts.begin() + pts.size() / 2, pts.end());
        return eval_p(mono, xm, xp);
    };
    return level_rank(n, params, num_vars, rng, f);
}

}  // namespace descff
