#pragma once

// The J functions: direct O(2^N) subset-sum evaluation (Gray-code kernel),
// symbolic-in-rho evaluation, kinematic residues, pole/asymptotic
// decomposition, the exponential and level-2 recurrences, and assembly of
// physical form factors.

#include <atomic>
#include <bit>
#include <cstdlib>
#include <functional>
#include <map>
#include <thread>
#include <vector>

#include "algebra.hpp"
#include "core.hpp"
#include "element.hpp"
#include "linalg.hpp"
#include "quadrature.hpp"
#include "rho_laurent.hpp"
#include "special_functions.hpp"

namespace descff {

template <class R> struct BasicJResult {
    using C = complex_t<R>;
    C value{};                    // numeric value (rho evaluated) when !symbolic
    BasicRhoLaurent<R> rho_poly;  // Laurent polynomial in rho when symbolic
    int N = 0;
    int level = 0, antilevel = 0;
    bool symbolic = false;
    double err_estimate = 0;  // rounding model for the 2^N summation
};
using JResult = BasicJResult<double>;

inline int env_thread_cap() {
    if (const char* s = std::getenv("DESCFF_THREADS")) {
        int v = std::atoi(s);
        if (v >= 1) return v;
    }
    return (int)std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

// Element flattened for the inner loop: per term a coefficient and the list of
// factor slots (index into the degree tables) with multiplicities.
template <class R> struct FlatElement {
    using C = complex_t<R>;
    std::vector<int> chiral_degrees;      // positive m, factors S_m(Xm) - (-1)^m S_m(Xp)
    std::vector<int> antichiral_degrees;  // positive m, factors S_{-m}(Xp) - (-1)^m S_{-m}(Xm)
    struct Term {
        BasicRhoLaurent<R> coeff;
        std::vector<int> chiral_slots;      // indices into chiral_degrees
        std::vector<int> antichiral_slots;  // indices into antichiral_degrees
    };
    std::vector<Term> terms;
    bool rho_mode = false;
    int level = 0, antilevel = 0;

    static FlatElement build(const BasicElement<R>& g) {
        FlatElement fe;
        if (!g.homogeneous())
            fe.level = -1;  // inhomogeneous: level queries unused
        auto [n, nb] = g.top_level();
        fe.level = n;
        fe.antilevel = nb;
        fe.rho_mode = g.mode() == CoeffMode::RhoPoly;
        std::map<int, int> cidx, aidx;
        for (int m : g.chiral_degrees()) {
            cidx[m] = (int)fe.chiral_degrees.size();
            fe.chiral_degrees.push_back(m);
        }
        for (int m : g.antichiral_degrees()) {
            aidx[m] = (int)fe.antichiral_degrees.size();
            fe.antichiral_degrees.push_back(m);
        }
        for (auto& [key, coeff] : g.terms()) {
            typename FlatElement::Term t;
            t.coeff = coeff;
            for (int m : key.first.parts()) t.chiral_slots.push_back(cidx[m]);
            for (int m : key.second.parts()) t.antichiral_slots.push_back(aidx[m]);
            fe.terms.push_back(std::move(t));
        }
        return fe;
    }
};

// Per-segment Gray-code walker. Maintains the sign assignment, the f-kernel
// product and the power sums incrementally; re-anchors periodically to stop
// drift. Accumulates either numeric values (rho given) or rho-degree buckets.
template <class R> class GrayKernel {
  public:
    using C = complex_t<R>;

    GrayKernel(const FlatElement<R>& fe, const std::vector<C>& xs, const Matrix<C>& fmat)
        : fe_(fe), xs_(xs), fmat_(fmat), n_((int)xs.size()) {
        // x_i^m for every needed degree
        xp_chiral_.assign(n_ * fe_.chiral_degrees.size(), C(0));
        xp_antichiral_.assign(n_ * fe_.antichiral_degrees.size(), C(0));
        for (int i = 0; i < n_; ++i) {
            for (size_t d = 0; d < fe_.chiral_degrees.size(); ++d)
                xp_chiral_[i * fe_.chiral_degrees.size() + d] = pow(xs[i], fe_.chiral_degrees[d]);
            for (size_t d = 0; d < fe_.antichiral_degrees.size(); ++d)
                xp_antichiral_[i * fe_.antichiral_degrees.size() + d] =
                    pow(xs[i], -fe_.antichiral_degrees[d]);
        }
        sm_pos_.resize(fe_.chiral_degrees.size());
        sp_pos_.resize(fe_.chiral_degrees.size());
        sm_neg_.resize(fe_.antichiral_degrees.size());
        sp_neg_.resize(fe_.antichiral_degrees.size());
    }

    // run over gray codes for counter values [begin, end); bucket[d + N] gains
    // sum of P*F over subsets with #I_- - #I_+ = d. Buckets are rho-Laurent so
    // rho-mode element coefficients fold in exactly.
    void run(uint64_t begin, uint64_t end, std::vector<BasicRhoLaurent<R>>& buckets,
             std::vector<C>& numeric_buckets, bool symbolic) {
        uint64_t gray = begin ^ (begin >> 1);
        anchor(gray);
        uint64_t counter = begin;
        while (true) {
            // accumulate current subset
            int d = minus_count_ - (n_ - minus_count_);
            if (!fe_.rho_mode) {
                C val = term_value_numeric() * F_;
                numeric_buckets[d + n_] += val;
            } else {
                BasicRhoLaurent<R> val = term_value_rho() * f_as_laurent();
                buckets[d + n_] += val;
            }
            ++counter;
            if (counter >= end) break;
            if ((counter & 0xFFF) == 0) {
                gray = counter ^ (counter >> 1);
                anchor(gray);
            } else {
                int bit = std::countr_zero(counter);
                flip(bit);
                gray ^= (uint64_t(1) << bit);
            }
        }
        (void)symbolic;
    }

  private:
    BasicRhoLaurent<R> f_as_laurent() const { return BasicRhoLaurent<R>(F_); }

    void anchor(uint64_t gray) {
        minus_ = gray;
        minus_count_ = std::popcount(gray);
        std::fill(sm_pos_.begin(), sm_pos_.end(), C(0));
        std::fill(sp_pos_.begin(), sp_pos_.end(), C(0));
        std::fill(sm_neg_.begin(), sm_neg_.end(), C(0));
        std::fill(sp_neg_.begin(), sp_neg_.end(), C(0));
        for (int i = 0; i < n_; ++i) {
            bool minus = (gray >> i) & 1;
            for (size_t d = 0; d < fe_.chiral_degrees.size(); ++d)
                (minus ? sm_pos_ : sp_pos_)[d] += xp_chiral_[i * fe_.chiral_degrees.size() + d];
            for (size_t d = 0; d < fe_.antichiral_degrees.size(); ++d)
                (minus ? sm_neg_ : sp_neg_)[d] +=
                    xp_antichiral_[i * fe_.antichiral_degrees.size() + d];
        }
        F_ = C(1);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (((gray >> i) & 1) && !((gray >> j) & 1)) F_ *= fmat_(i, j);
    }

    void flip(int b) {
        bool to_minus = !((minus_ >> b) & 1);
        // f-product update against the unchanged others
        for (int j = 0; j < n_; ++j) {
            if (j == b) continue;
            bool jm = (minus_ >> j) & 1;
            if (to_minus) {
                if (jm)
                    F_ /= fmat_(j, b);
                else
                    F_ *= fmat_(b, j);
            } else {
                if (jm)
                    F_ *= fmat_(j, b);
                else
                    F_ /= fmat_(b, j);
            }
        }
        const C sgn = to_minus ? C(1) : C(-1);
        for (size_t d = 0; d < fe_.chiral_degrees.size(); ++d) {
            C v = xp_chiral_[b * fe_.chiral_degrees.size() + d];
            sm_pos_[d] += sgn * v;
            sp_pos_[d] -= sgn * v;
        }
        for (size_t d = 0; d < fe_.antichiral_degrees.size(); ++d) {
            C v = xp_antichiral_[b * fe_.antichiral_degrees.size() + d];
            sm_neg_[d] += sgn * v;
            sp_neg_[d] -= sgn * v;
        }
        minus_ ^= (uint64_t(1) << b);
        minus_count_ += to_minus ? 1 : -1;
    }

    C chiral_factor(size_t d) const {
        int m = fe_.chiral_degrees[d];
        C sign = (m % 2 == 0) ? C(1) : C(-1);
        return sm_pos_[d] - sign * sp_pos_[d];
    }
    C antichiral_factor(size_t d) const {
        int m = fe_.antichiral_degrees[d];
        C sign = (m % 2 == 0) ? C(1) : C(-1);
        return sp_neg_[d] - sign * sm_neg_[d];
    }

    C term_value_numeric() const {
        C total(0);
        for (const auto& t : fe_.terms) {
            C v = t.coeff.coeff(0);
            for (int s : t.chiral_slots) v *= chiral_factor(s);
            for (int s : t.antichiral_slots) v *= antichiral_factor(s);
            total += v;
        }
        return total;
    }
    BasicRhoLaurent<R> term_value_rho() const {
        BasicRhoLaurent<R> total;
        for (const auto& t : fe_.terms) {
            C v(1);
            for (int s : t.chiral_slots) v *= chiral_factor(s);
            for (int s : t.antichiral_slots) v *= antichiral_factor(s);
            total += t.coeff * v;
        }
        return total;
    }

    const FlatElement<R>& fe_;
    const std::vector<C>& xs_;
    const Matrix<C>& fmat_;
    int n_;
    uint64_t minus_ = 0;
    int minus_count_ = 0;
    C F_{1};
    std::vector<C> xp_chiral_, xp_antichiral_;
    std::vector<C> sm_pos_, sp_pos_;  // S_m(X-)/S_m(X+), positive degrees
    std::vector<C> sm_neg_, sp_neg_;  // S_{-m}(X-)/S_{-m}(X+)
};

template <class R>
Matrix<complex_t<R>> kernel_matrix(const std::vector<complex_t<R>>& xs, complex_t<R> omega) {
    using C = complex_t<R>;
    const int n = (int)xs.size();
    Matrix<C> fm(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            C r = xs[i] / xs[j];
            if (abs(r - C(1)) < R(1e-12) || abs(r + C(1)) < R(1e-12))
                throw domain_error(
                    "j_direct: coincident or opposite arguments; use residue_kinematic for the "
                    "kinematic point");
            fm(i, j) = f_kernel_w(r, omega);
        }
    return fm;
}

// shared driver for the numeric and symbolic evaluations
template <class R>
void j_buckets(const BasicElement<R>& g, const std::vector<complex_t<R>>& xs,
               const BasicModelParams<R>& params, std::vector<BasicRhoLaurent<R>>& buckets,
               std::vector<complex_t<R>>& numeric_buckets) {
    using C = complex_t<R>;
    const int n = (int)xs.size();
    for (const C& x : xs)
        if (abs(x) == R(0)) throw domain_error("j_direct: zero argument");
    auto fe = FlatElement<R>::build(g);
    Matrix<C> fmat = kernel_matrix<R>(xs, params.omega());
    buckets.assign(2 * n + 1, BasicRhoLaurent<R>());
    numeric_buckets.assign(2 * n + 1, C(0));
    const uint64_t total = uint64_t(1) << n;
    const int segments = (n >= 12) ? 64 : 1;
    const uint64_t seg = total / segments;
    if (segments == 1) {
        GrayKernel<R> k(fe, xs, fmat);
        k.run(0, total, buckets, numeric_buckets, fe.rho_mode);
        return;
    }
    std::vector<std::vector<BasicRhoLaurent<R>>> sym(segments);
    std::vector<std::vector<C>> num(segments);
    int nthreads = std::min(env_thread_cap(), segments);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int s = next.fetch_add(1);
            if (s >= segments) return;
            sym[s].assign(2 * n + 1, BasicRhoLaurent<R>());
            num[s].assign(2 * n + 1, C(0));
            GrayKernel<R> k(fe, xs, fmat);
            k.run(seg * s, seg * (s + 1), sym[s], num[s], fe.rho_mode);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    // deterministic reduction in segment order, independent of thread count
    for (int s = 0; s < segments; ++s)
        for (int d = 0; d <= 2 * n; ++d) {
            buckets[d] += sym[s][d];
            numeric_buckets[d] += num[s][d];
        }
}

}  // namespace detail

// J^g_{N,a}(X): sum over subset splittings (Eq. with the e^{i pi a} weights and
// the f-kernel pair product).
template <class R>
BasicJResult<R> j_direct(const BasicElement<R>& g, complex_t<R> a,
                         const std::vector<complex_t<R>>& xs, const BasicModelParams<R>& params) {
    using C = complex_t<R>;
    const int n = (int)xs.size();
    BasicElement<R> gn = (g.mode() == CoeffMode::RhoPoly) ? g.at_a(a) : g;
    std::vector<BasicRhoLaurent<R>> buckets;
    std::vector<C> nb;
    detail::j_buckets(gn, xs, params, buckets, nb);
    const C ipi(R(0), pi_v<R>());
    const C rho = exp(ipi * a);
    C total(0);
    for (int d = -n; d <= n; ++d) total += nb[d + n] * pow(rho, d);
    BasicJResult<R> out;
    out.value = total;
    out.N = n;
    auto [lv, alv] = gn.top_level();
    out.level = lv;
    out.antilevel = alv;
    out.err_estimate = 2.3e-16 * std::sqrt((double)(uint64_t(1) << n));
    return out;
}

// J^g_{N,a}(X) as an exact Laurent polynomial in rho = e^{i pi a}.
template <class R>
BasicJResult<R> j_rho(const BasicElement<R>& g, const std::vector<complex_t<R>>& xs,
                      const BasicModelParams<R>& params) {
    using C = complex_t<R>;
    const int n = (int)xs.size();
    std::vector<BasicRhoLaurent<R>> buckets;
    std::vector<C> nb;
    detail::j_buckets(g, xs, params, buckets, nb);
    BasicRhoLaurent<R> poly;
    for (int d = -n; d <= n; ++d) {
        if (g.mode() == CoeffMode::RhoPoly) {
            BasicRhoLaurent<R> shifted;
            for (auto& [deg, c] : buckets[d + n].coeffs()) shifted.add(deg + d, c);
            poly += shifted;
        } else {
            poly.add(d, nb[d + n]);
        }
    }
    BasicJResult<R> out;
    out.rho_poly = poly;
    out.symbolic = true;
    out.N = n;
    auto [lv, alv] = g.top_level();
    out.level = lv;
    out.antilevel = alv;
    return out;
}

// R^g_{N,a}(X; x) = -i sin(pi p) (prod_j f(x/x_j) - prod_j f(x_j/x)) J^g_{N-2,a}(X):
// the scaled residue of J at the kinematic point x' = -x (X has N-2 entries).
template <class R>
complex_t<R> residue_kinematic(const BasicElement<R>& g, complex_t<R> a,
                               const std::vector<complex_t<R>>& xs, complex_t<R> x,
                               const BasicModelParams<R>& params) {
    using C = complex_t<R>;
    const C w = params.omega();
    C fwd(1), bwd(1);
    for (const C& xj : xs) {
        fwd *= f_kernel_w(x / xj, w);
        bwd *= f_kernel_w(xj / x, w);
    }
    const C i_(R(0), R(1));
    return -i_ * sin(pi_v<R>() * params.p) * (fwd - bwd) * j_direct(g, a, xs, params).value;
}

// --- exponential recurrence ---------------------------------------------------
// J_{N,a}(X,x) = 2cos(pi a) J_{N-1,a}(X) + sum_i x_i R_{N,a,i}(X)/(x + x_i),
// seeds J_0 = 1, J_1 = 2cos(pi a). Memoized over subsets of the input.
template <class R>
complex_t<R> recur_exponential(complex_t<R> a, const std::vector<complex_t<R>>& xs,
                               const BasicModelParams<R>& params) {
    using C = complex_t<R>;
    const int n = (int)xs.size();
    if (n > 24) throw domain_error("recur_exponential: too many points for the subset recursion");
    Matrix<C> fmat = detail::kernel_matrix<R>(xs, params.omega());
    const C cospa = cos(pi_v<R>() * a);
    const C msinp = -C(R(0), R(1)) * sin(pi_v<R>() * params.p);
    std::vector<C> memo(size_t(1) << n, C(0));
    std::vector<char> have(size_t(1) << n, 0);
    std::function<C(uint32_t)> J = [&](uint32_t mask) -> C {
        int m = std::popcount(mask);
        if (m == 0) return C(1);
        if (m == 1) return R(2) * cospa;
        if (have[mask]) return memo[mask];
        int b = 31 - std::countl_zero(mask);
        uint32_t rest = mask ^ (1u << b);
        C x = xs[b];
        C total = R(2) * cospa * J(rest);
        for (int i = 0; i < n; ++i) {
            if (!((rest >> i) & 1)) continue;
            C fwd(1), bwd(1);
            for (int j = 0; j < n; ++j) {
                if (j == i || !((rest >> j) & 1)) continue;
                fwd *= fmat(i, j);
                bwd *= fmat(j, i);
            }
            C Ri = msinp * (fwd - bwd) * J(rest ^ (1u << i));
            total += xs[i] * Ri / (x + xs[i]);
        }
        have[mask] = 1;
        memo[mask] = total;
        return total;
    };
    return J((n == 32 ? ~0u : (1u << n) - 1u));
}

// --- level-2 recurrence ---------------------------------------------------------
// J^{h2}_{N,a}(X,x) = -sum_i x_i^{-1} R^{h2}_i(X)/(x^{-1} + x_i^{-1})
//                     + (2i/cos(pi a)) x S_1(X) J_{N-1,a}(X) + 2cos(pi a) J^{h2}_{N-1,a}(X),
// seeds J^{h2}_0 = J^{h2}_1 = 0. Near a = +-1/2 the finite limit form is used.
template <class R>
complex_t<R> recur_level2(complex_t<R> a, const std::vector<complex_t<R>>& xs,
                          const BasicModelParams<R>& params);

// exact d/da of the exponential J at a (via the rho-symbolic route)
template <class R>
complex_t<R> exp_j_derivative(complex_t<R> at_a, const std::vector<complex_t<R>>& xs,
                              const BasicModelParams<R>& params) {
    auto sym = j_rho(BasicElement<R>::one(), xs, params);
    return sym.rho_poly.derivative_a().eval_at_a(at_a);
}

// finite rewriting of lim_{a->-1/2} J^{h2_a}_{N,a}:
//   (1/sin pi p) (J^{c_{-2}}_{N,-1/2} + (i/pi) S_1^2 J'_N)
template <class R>
complex_t<R> level2_limit_value(const std::vector<complex_t<R>>& xs,
                                const BasicModelParams<R>& params) {
    using C = complex_t<R>;
    const C half(R(-0.5), R(0));
    C jc2 = j_direct(BasicElement<R>::generator(2), half, xs, params).value;
    C s1 = xs.empty() ? C(0) : power_sum(1, xs);
    C jp = exp_j_derivative(half, xs, params);
    const C i_(R(0), R(1));
    return (jc2 + i_ / pi_v<R>() * s1 * s1 * jp) / sin(pi_v<R>() * params.p);
}

template <class R>
complex_t<R> recur_level2(complex_t<R> a, const std::vector<complex_t<R>>& xs,
                          const BasicModelParams<R>& params) {
    using C = complex_t<R>;
    const int n = (int)xs.size();
    const C cospa = cos(pi_v<R>() * a);
    if (abs(cospa) < R(1e-3)) return level2_limit_value(xs, params);
    if (n > 24) throw domain_error("recur_level2: too many points for the subset recursion");
    if (n < 2) return C(0);
    Matrix<C> fmat = detail::kernel_matrix<R>(xs, params.omega());
    const C msinp = -C(R(0), R(1)) * sin(pi_v<R>() * params.p);
    const C two_i_over_cos = C(R(0), R(2)) / cospa;
    std::vector<C> memo2(size_t(1) << n, C(0));
    std::vector<char> have2(size_t(1) << n, 0);
    std::vector<C> memoE(size_t(1) << n, C(0));
    std::vector<char> haveE(size_t(1) << n, 0);
    std::function<C(uint32_t)> Jexp = [&](uint32_t mask) -> C {
        int m = std::popcount(mask);
        if (m == 0) return C(1);
        if (m == 1) return R(2) * cospa;
        if (haveE[mask]) return memoE[mask];
        int b = 31 - std::countl_zero(mask);
        uint32_t rest = mask ^ (1u << b);
        C x = xs[b];
        C total = R(2) * cospa * Jexp(rest);
        for (int i = 0; i < n; ++i) {
            if (!((rest >> i) & 1)) continue;
            C fwd(1), bwd(1);
            for (int j = 0; j < n; ++j) {
                if (j == i || !((rest >> j) & 1)) continue;
                fwd *= fmat(i, j);
                bwd *= fmat(j, i);
            }
            total += xs[i] * msinp * (fwd - bwd) * Jexp(rest ^ (1u << i)) / (x + xs[i]);
        }
        haveE[mask] = 1;
        memoE[mask] = total;
        return total;
    };
    std::function<C(uint32_t)> J2 = [&](uint32_t mask) -> C {
        int m = std::popcount(mask);
        if (m < 2) return C(0);
        if (have2[mask]) return memo2[mask];
        int b = 31 - std::countl_zero(mask);
        uint32_t rest = mask ^ (1u << b);
        C x = xs[b];
        C s1(0);
        for (int i = 0; i < n; ++i)
            if ((rest >> i) & 1) s1 += xs[i];
        C total = two_i_over_cos * x * s1 * Jexp(rest) + R(2) * cospa * J2(rest);
        for (int i = 0; i < n; ++i) {
            if (!((rest >> i) & 1)) continue;
            C fwd(1), bwd(1);
            for (int j = 0; j < n; ++j) {
                if (j == i || !((rest >> j) & 1)) continue;
                fwd *= fmat(i, j);
                bwd *= fmat(j, i);
            }
            C Ri = msinp * (fwd - bwd) * J2(rest ^ (1u << i));
            // - x_i^{-1} R_i/(x^{-1} + x_i^{-1}) = - x R_i/(x + x_i)
            total -= x * Ri / (x + xs[i]);
        }
        have2[mask] = 1;
        memo2[mask] = total;
        return total;
    };
    return J2((1u << n) - 1u);
}

// --- pole/asymptotic decomposition ---------------------------------------------
struct PoleDecomposition {
    std::vector<Cplx> residues;   // R_i, one per entry of X
    std::map<int, Cplx> c_inf;    // C^(inf)_s, -antilevel <= s <= level
    std::map<int, Cplx> c_zero;   // C^(0)_s
    Cplx D{};                     // sum of residues
    double fit_residual = 0;
};

// J^g_{N,a}(X, x) = sum_i x_i R_i/(x + x_i) + sum_s C^(inf)_s x^s, with the dual
// form around x = 0; fits the Laurent coefficients at geometric sample points.
inline PoleDecomposition pole_decomposition(const Element& g, Cplx a,
                                            const std::vector<Cplx>& xs,
                                            const ModelParams& params) {
    if (!g.homogeneous()) throw domain_error("pole_decomposition needs a homogeneous element");
    auto [nlev, nbar] = g.top_level();
    const int N = (int)xs.size() + 1;
    PoleDecomposition out;
    for (size_t i = 0; i < xs.size(); ++i) {
        std::vector<Cplx> rest;
        for (size_t j = 0; j < xs.size(); ++j)
            if (j != i) rest.push_back(xs[j]);
        out.residues.push_back(residue_kinematic(g, a, rest, xs[i], params));
        out.D += out.residues.back();
    }
    const int ncoef = nlev + nbar + 1;
    const int nsamp = 2 * (nlev + nbar) + 3;
    // geometric samples kept away from the poles at -x_i
    Cplx c0 = std::polar(0.77, 0.41);
    const double r = 1.31;
    for (int guard = 0; guard < 64; ++guard) {
        bool ok = true;
        for (int q = 0; q < nsamp; ++q) {
            Cplx xq = c0 * std::pow(r, q);
            for (const Cplx& xi : xs)
                if (std::abs(xq + xi) < 0.05 || std::abs(xq / xi - 1.0) < 0.05 ||
                    std::abs(xq / xi + 1.0) < 0.05)
                    ok = false;
        }
        if (ok) break;
        c0 *= std::polar(1.0, 0.17);
    }
    Matrix<Cplx> A(nsamp, ncoef), A0(nsamp, ncoef);
    std::vector<Cplx> b(nsamp), b0(nsamp);
    double scale = 0;
    for (int q = 0; q < nsamp; ++q) {
        Cplx xq = c0 * std::pow(r, q);
        std::vector<Cplx> full = xs;
        full.push_back(xq);
        Cplx J = j_direct(g, a, full, params).value;
        scale = std::max(scale, std::abs(J));
        Cplx pole_inf(0), pole_zero(0);
        for (size_t i = 0; i < xs.size(); ++i) {
            pole_inf += xs[i] * out.residues[i] / (xq + xs[i]);
            pole_zero -= (1.0 / xs[i]) * out.residues[i] / (1.0 / xq + 1.0 / xs[i]);
        }
        b[q] = J - pole_inf;
        b0[q] = J - pole_zero;
        for (int s = -nbar; s <= nlev; ++s) {
            A(q, s + nbar) = std::pow(xq, s);
            A0(q, s + nbar) = std::pow(xq, s);
        }
    }
    double res1 = 0, res2 = 0;
    auto cinf = least_squares(A, b, &res1);
    auto czero = least_squares(A0, b0, &res2);
    out.fit_residual = std::max(res1, res2);
    if (out.fit_residual > 1e-6 * (scale + 1.0))
        throw decomposition_error("pole_decomposition: Laurent fit residual too large");
    for (int s = -nbar; s <= nlev; ++s) {
        out.c_inf[s] = cinf[s + nbar];
        out.c_zero[s] = czero[s + nbar];
    }
    return out;
}

// --- full physical form factor ---------------------------------------------------
// f^g_a(theta) = G_a (i lambda')^N prod_{i<j} R(theta_i - theta_j) J^g(e^theta).
inline Cplx assemble_form_factor(const Element& g, Cplx a, const std::vector<Cplx>& thetas,
                                 const ModelParams& params, const QuadratureSpec& spec) {
    const int n = (int)thetas.size();
    Cplx ga = vev_g(a, params, spec);
    Cplx lp = lambda_prime(params, spec);
    Cplx pre = ga * std::pow(Cplx(0, 1) * lp, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pre *= minimal_r(thetas[i] - thetas[j], params, spec);
    std::vector<Cplx> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = std::exp(thetas[i]);
    return pre * j_direct(g, a, xs, params).value;
}

}  // namespace descff
