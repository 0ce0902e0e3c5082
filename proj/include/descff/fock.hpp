#pragma once

// The auxiliary two-boson free-field representation: Heisenberg modes d^+-_n,
// vertex operators lambda_+-, t, s, Wick contraction of vertex words, the
// pi_R/pi_L insertions, tilde-J matrix elements, level-state expansions,
// reduction conditions and the even projectors.

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "algebra.hpp"
#include "core.hpp"
#include "element.hpp"
#include "jfunctions.hpp"
#include "linalg.hpp"
#include "partition.hpp"

namespace descff {

// Structure constants A^+-_m of the d-mode Heisenberg algebra.
struct HeisenbergSpec {
    Cplx p;
    explicit HeisenbergSpec(const ModelParams& params) : p(params.p) {}

    Cplx a_plus(int m) const {
        if (m % 2 == 0) {
            Cplx s = std::sin(kPi * double(m / 2) * p);
            return -4.0 * s * s;
        }
        return 2.0 * Cplx(0, 1) * std::sin(kPi * double(m) * p);
    }
    Cplx a_minus(int m) const { return (m % 2 == 0) ? a_plus(m) : -a_plus(m); }
    Cplx a_sig(int m, int sig) const { return sig > 0 ? a_plus(m) : a_minus(m); }

    // [pi_R(c_{-m}), pi_L(c_{-n})] = delta_mn (0 odd; -2m/A+_m even)
    Cplx cross_commutator(int m, int n) const {
        if (m != n || m % 2 == 1) return Cplx(0);
        return -2.0 * double(m) / a_plus(m);
    }
};

// --- vertex words -------------------------------------------------------------
enum class Letter { LambdaPlus, LambdaMinus, S };

struct VertexLetter {
    Letter kind;
    Cplx arg;
};

using VertexWord = std::vector<VertexLetter>;

namespace detail {

// contraction factor between two elementary lambda parts
inline Cplx lambda_pair(Letter a, Cplx za, Letter b, Cplx zb, Cplx omega) {
    if (a == b) return Cplx(1);
    // pair (lambda_-, lambda_+): f(z_minus / z_plus), insensitive to order
    Cplx zm = (a == Letter::LambdaMinus) ? za : zb;
    Cplx zp = (a == Letter::LambdaPlus) ? za : zb;
    Cplx r = zm / zp;
    if (std::abs(r - 1.0) < 1e-13 || std::abs(r + 1.0) < 1e-13)
        throw domain_error("vertex word: inadmissible coincident arguments");
    return f_kernel_w(r, omega);
}

// expand a letter into its elementary lambda parts; s(y) = :lambda_-(y) lambda_+(-y):
inline void elementary(const VertexLetter& l, std::vector<std::pair<Letter, Cplx>>& out) {
    if (l.kind == Letter::S) {
        out.push_back({Letter::LambdaMinus, l.arg});
        out.push_back({Letter::LambdaPlus, -l.arg});
    } else {
        out.push_back({l.kind, l.arg});
    }
}

}  // namespace detail

// Product of all pairwise contraction factors of a normal-ordered vertex word;
// parts belonging to the same s letter do not contract with each other.
inline Cplx pair_contraction(const VertexWord& word, const ModelParams& params) {
    const Cplx omega = params.omega();
    Cplx total(1);
    for (size_t i = 0; i < word.size(); ++i)
        for (size_t j = i + 1; j < word.size(); ++j) {
            std::vector<std::pair<Letter, Cplx>> a, b;
            detail::elementary(word[i], a);
            detail::elementary(word[j], b);
            for (auto& [la, za] : a)
                for (auto& [lb, zb] : b) total *= detail::lambda_pair(la, za, lb, zb, omega);
        }
    return total;
}

// <t(x_1)...t(x_N)>_a by expanding every t into its lambda_+- branches.
inline Cplx t_vacuum_expectation(const std::vector<Cplx>& xs, Cplx a, const ModelParams& params) {
    const int n = (int)xs.size();
    const Cplx rho = std::exp(Cplx(0, kPi) * a);
    const Cplx omega = params.omega();
    Cplx total(0);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        // bit set: lambda_- branch (weight rho), clear: lambda_+ (weight 1/rho)
        int minus = std::popcount(mask);
        Cplx term = std::pow(rho, 2 * minus - n);
        for (int i = 0; i < n && std::abs(term) > 0; ++i)
            for (int j = i + 1; j < n; ++j) {
                bool im = (mask >> i) & 1, jm = (mask >> j) & 1;
                if (im == jm) continue;
                Cplx zm = im ? xs[i] : xs[j];
                Cplx zp = im ? xs[j] : xs[i];
                term *= f_kernel_w(zm / zp, omega);
            }
        total += term;
    }
    return total;
}

// <t(x_1)...t(x_K) s(y_1)...s(y_L)>_a via the word machinery.
inline Cplx ts_expectation(const std::vector<Cplx>& xs, const std::vector<Cplx>& ys, Cplx a,
                           const ModelParams& params) {
    const int n = (int)xs.size();
    const Cplx rho = std::exp(Cplx(0, kPi) * a);
    Cplx total(0);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        int minus = std::popcount(mask);
        VertexWord word;
        for (int i = 0; i < n; ++i)
            word.push_back({((mask >> i) & 1) ? Letter::LambdaMinus : Letter::LambdaPlus, xs[i]});
        for (const Cplx& y : ys) word.push_back({Letter::S, y});
        total += std::pow(rho, 2 * minus - n) * pair_contraction(word, params);
    }
    return total;
}

// --- pi_R / pi_L insertions -----------------------------------------------------
// tilde-J^{h hbar'}_{N,a}(X) = <1| pi_R(h) t(x_1)...t(x_N) pi_L(h') |1>_a.
// h and h' are purely chiral elements with numeric coefficients.
inline Cplx matrix_element_tilde(const Element& h, const Element& hp, const std::vector<Cplx>& xs,
                                 Cplx a, const ModelParams& params) {
    if (!h.purely_chiral() || !hp.purely_chiral())
        throw domain_error("matrix_element_tilde expects purely chiral insertions");
    h.require_numeric("matrix_element_tilde");
    hp.require_numeric("matrix_element_tilde");
    const HeisenbergSpec heis(params);
    const int n = (int)xs.size();
    const Cplx rho = std::exp(Cplx(0, kPi) * a);
    const Cplx omega = params.omega();

    // recursive commutation of the pi_R factors through the word and pi_L factors
    std::function<Cplx(const std::vector<int>&, size_t, std::vector<int>, uint32_t)> W =
        [&](const std::vector<int>& lam, size_t li, std::vector<int> mu, uint32_t mask) -> Cplx {
        if (li == lam.size()) {
            // remaining pi_L factors commute leftward to <1|, each yields its
            // antichiral power sum
            Cplx v(1);
            for (int m : mu) {
                Cplx s(0);
                for (int i = 0; i < n; ++i) {
                    bool is_minus = (mask >> i) & 1;
                    Cplx contrib = std::pow(xs[i], -m);
                    // [pi_L(c_{-m}), lambda_eps(z)] = -(eps)^{m+1} z^{-m} lambda_eps(z)
                    s += is_minus ? (m % 2 == 0 ? -contrib : contrib) : contrib;
                }
                v *= s;
            }
            return v;
        }
        int m = lam[li];
        // P-sum of the pi_R factor against the word
        Cplx s(0);
        for (int i = 0; i < n; ++i) {
            bool is_minus = (mask >> i) & 1;
            Cplx contrib = std::pow(xs[i], m);
            // [pi_R(c_{-m}), lambda_eps(z)] = (-eps)^{m+1} z^m lambda_eps(z)
            s += is_minus ? contrib : (m % 2 == 0 ? -contrib : contrib);
        }
        Cplx total = s * W(lam, li + 1, mu, mask);
        for (size_t v = 0; v < mu.size(); ++v) {
            Cplx cc = heis.cross_commutator(m, mu[v]);
            if (std::abs(cc) == 0.0) continue;
            std::vector<int> rest = mu;
            rest.erase(rest.begin() + v);
            total += cc * W(lam, li + 1, rest, mask);
        }
        return total;
    };

    Cplx total(0);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        int minus = std::popcount(mask);
        Cplx F(1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                bool im = (mask >> i) & 1, jm = (mask >> j) & 1;
                if (im == jm) continue;
                Cplx zm = im ? xs[i] : xs[j];
                Cplx zp = im ? xs[j] : xs[i];
                F *= f_kernel_w(zm / zp, omega);
            }
        Cplx base = std::pow(rho, 2 * minus - n) * F;
        for (auto& [kh, ch] : h.terms())
            for (auto& [kp, cp] : hp.terms()) {
                Cplx val = W(kh.first.parts(), 0, kp.first.parts(), mask);
                total += base * ch.coeff(0) * cp.coeff(0) * val;
            }
    }
    return total;
}

// pi_LR^{-1} o pi_RL: the Wick map sending h (x) hbar' to the plain element with
// the same tilde matrix elements.
inline Element tilde_to_plain(const Element& g, const ModelParams& params) {
    g.require_numeric("tilde_to_plain");
    const HeisenbergSpec heis(params);
    Element out;
    for (auto& [key, coeff] : g.terms()) {
        const std::vector<int>& lam = key.first.parts();
        const std::vector<int>& mu = key.second.parts();
        const Cplx c0 = coeff.coeff(0);
        std::function<void(size_t, std::vector<int>, std::vector<int>, Cplx)> rec =
            [&, c0](size_t i, std::vector<int> kept, std::vector<int> mu_rest, Cplx acc) {
                if (i == lam.size()) {
                    out.add_term(Partition(kept), Partition(mu_rest),
                                 BasicRhoLaurent<double>(acc * c0));
                    return;
                }
                std::vector<int> kept2 = kept;
                kept2.push_back(lam[i]);
                rec(i + 1, kept2, mu_rest, acc);
                for (size_t v = 0; v < mu_rest.size(); ++v) {
                    Cplx cc = heis.cross_commutator(lam[i], mu_rest[v]);
                    if (std::abs(cc) == 0.0) continue;
                    std::vector<int> rest = mu_rest;
                    rest.erase(rest.begin() + v);
                    rec(i + 1, kept, rest, acc * cc);
                }
            };
        rec(0, {}, mu, Cplx(1));
    }
    return out;
}

// --- one-sided Fock vectors ----------------------------------------------------
// A polynomial in the modes d^sign_n (n > 0) applied to one of the vacua; Side
// tags whether it multiplies <1| from the right (Bra) or |1> from the left (Ket).
enum class Side { Bra, Ket };

class FockVector {
  public:
    // a monomial is the sorted list of mode occurrences (sign, n)
    using Mode = std::pair<int, int>;
    using Monomial = std::vector<Mode>;

    explicit FockVector(Side side = Side::Bra) : side_(side) {}

    Side side() const { return side_; }
    const std::map<Monomial, Cplx>& terms() const { return terms_; }
    bool zero() const { return terms_.empty(); }

    static FockVector vacuum(Side side) {
        FockVector v(side);
        v.terms_[{}] = Cplx(1);
        return v;
    }

    void add(Monomial m, Cplx c) {
        std::sort(m.begin(), m.end());
        auto it = terms_.emplace(std::move(m), Cplx(0)).first;
        it->second += c;
        if (std::abs(it->second) == 0.0) terms_.erase(it);
    }

    FockVector& operator+=(const FockVector& o) {
        for (auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    FockVector operator*(Cplx s) const {
        FockVector r(side_);
        for (auto& [m, c] : terms_) r.add(m, c * s);
        return r;
    }

    int level(const Monomial& m) const {
        int l = 0;
        for (auto& [sig, n] : m) l += n;
        return l;
    }
    int max_level() const {
        int l = 0;
        for (auto& [m, c] : terms_) l = std::max(l, level(m));
        return l;
    }

    // multiply by one creation-side mode
    FockVector raised(int sign, int n) const {
        FockVector r(side_);
        for (auto& [m, c] : terms_) {
            Monomial m2 = m;
            m2.push_back({sign, n});
            r.add(std::move(m2), c);
        }
        return r;
    }

    // apply alpha d/d(d^-_n) + beta d/d(d^+_n)  (occurrence rule)
    FockVector differentiated(int n, Cplx alpha, Cplx beta) const {
        FockVector r(side_);
        for (auto& [m, c] : terms_) {
            for (size_t i = 0; i < m.size(); ++i) {
                if (i > 0 && m[i] == m[i - 1]) continue;  // each distinct mode once
                if (m[i].second != n) continue;
                int count = 0;
                for (auto& mm : m)
                    if (mm == m[i]) ++count;
                Monomial m2 = m;
                m2.erase(m2.begin() + i);
                Cplx w = (m[i].first < 0 ? alpha : beta) * double(count);
                if (std::abs(w) > 0) r.add(std::move(m2), c * w);
            }
        }
        return r;
    }

    double norm() const {
        double s = 0;
        for (auto& [m, c] : terms_) s = std::max(s, std::abs(c));
        return s;
    }

  private:
    Side side_;
    std::map<Monomial, Cplx> terms_;
};

// pi_R(h)/pi_L(h) of a purely chiral element as a FockVector on the given side.
inline FockVector pi_insertion(const Element& h, Side side, const ModelParams& params) {
    h.require_numeric("pi_insertion");
    const HeisenbergSpec heis(params);
    FockVector out(side);
    for (auto& [key, coeff] : h.terms()) {
        FockVector term = FockVector::vacuum(side) * coeff.coeff(0);
        for (int m : key.first.parts()) {
            Cplx inv = 1.0 / heis.a_plus(m);
            FockVector next(side);
            next += term.raised(-1, m) * inv;
            next += term.raised(+1, m) * (-inv);
            term = next;
        }
        out += term;
    }
    return out;
}

// v lies in the image of pi_R (Bra) / pi_L (Ket) iff lowering by
// d^-_{-m} + (-1)^m d^+_{-m} kills it for every m > 0; both sides reduce to
// (d/d d^-_m + d/d d^+_m) v = 0.
inline bool reduction_check(const FockVector& v, double tol = 1e-10) {
    double scale = v.norm() + 1e-300;
    for (int m = 1; m <= v.max_level(); ++m) {
        FockVector low = v.differentiated(m, Cplx(1), Cplx(1));
        if (low.norm() > tol * scale) return false;
    }
    return true;
}

// even projector P_{2k}: v |-> sum_j (-1/2)^j/j! (d^-_{2k}+d^+_{2k})^j (d_+d_-deriv)^j v
inline FockVector even_projector_apply(const FockVector& v, int k) {
    const int m = 2 * k;
    FockVector total(v.side());
    FockVector current = v;
    double factor = 1.0;
    for (int j = 0;; ++j) {
        if (j > 0) {
            current = current.differentiated(m, Cplx(1), Cplx(1));
            factor *= -0.5 / j;
            if (current.zero()) break;
        }
        FockVector piece = current;
        for (int r = 0; r < j; ++r) {
            FockVector next(piece.side());
            next += piece.raised(-1, m);
            next += piece.raised(+1, m);
            piece = next;
        }
        total += piece * Cplx(factor, 0);
        if (j > 64) break;
    }
    return total;
}

// --- level states <n; Xi; H| ----------------------------------------------------
// Starred states: the epsilon-independent t-s and s-s contraction factors are
// divided out. prefactor() returns that factor for the unstarred version.
struct LevelStates {
    std::vector<FockVector> levels;  // index = level
    Cplx star_prefactor{1};
};

inline LevelStates level_state_coefficients(const std::vector<Cplx>& xi,
                                            const std::vector<Cplx>& eta, Cplx a, int max_level,
                                            const ModelParams& params) {
    const int k = (int)xi.size();
    const Cplx rho = std::exp(Cplx(0, kPi) * a);
    const Cplx omega = params.omega();
    LevelStates out;
    out.levels.assign(max_level + 1, FockVector(Side::Bra));
    for (size_t i = 0; i < xi.size(); ++i)
        for (size_t j = 0; j < eta.size(); ++j) out.star_prefactor *= f_kernel_w(xi[i] / eta[j], omega);
    for (size_t j = 0; j < eta.size(); ++j)
        for (size_t jp = j + 1; jp < eta.size(); ++jp)
            out.star_prefactor *=
                f_kernel_w(eta[j] / eta[jp], omega) * f_kernel_w(eta[jp] / eta[j], omega);

    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        int minus = std::popcount(mask);
        Cplx w = std::pow(rho, 2 * minus - k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                bool im = (mask >> i) & 1, jm = (mask >> j) & 1;
                if (im == jm) continue;
                // letters at xi^{-1} z: pair (minus i, plus j) gives f(xi_j/xi_i)
                Cplx num = im ? xi[j] : xi[i];
                Cplx den = im ? xi[i] : xi[j];
                w *= f_kernel_w(num / den, omega);
            }
        // T_n = sum_i xi_i^n d^{eps_i}_n + sum_j eta_j^n (d^-_n + (-1)^n d^+_n)
        // exp expansion: n B_n = sum_{m<=n} T_m B_{n-m}
        std::vector<FockVector> B(max_level + 1, FockVector(Side::Bra));
        B[0] = FockVector::vacuum(Side::Bra);
        for (int n = 1; n <= max_level; ++n) {
            FockVector acc(Side::Bra);
            for (int m = 1; m <= n; ++m) {
                // T_m applied to B[n-m]
                const FockVector& base = B[n - m];
                for (int i = 0; i < k; ++i) {
                    int sig = ((mask >> i) & 1) ? -1 : +1;
                    acc += base.raised(sig, m) * std::pow(xi[i], m);
                }
                for (const Cplx& e : eta) {
                    acc += base.raised(-1, m) * std::pow(e, m);
                    acc += base.raised(+1, m) * (std::pow(e, m) * ((m % 2 == 0) ? 1.0 : -1.0));
                }
            }
            B[n] = acc * Cplx(1.0 / n, 0);
        }
        for (int n = 0; n <= max_level; ++n) out.levels[n] += B[n] * w;
    }
    return out;
}

// dim of level n of the two-boson Fock space: coefficient of q^n in prod (1-q^k)^{-2}
inline long long fock2_dimension(int n) {
    std::vector<long long> dp(n + 1, 0);
    dp[0] = 1;
    for (int pass = 0; pass < 2; ++pass)
        for (int kk = 1; kk <= n; ++kk)
            for (int v = kk; v <= n; ++v) dp[v] += dp[v - kk];
    return dp[n];
}

// --- the section-6 level-2 worked example ---------------------------------------
struct XSolveResult {
    FockVector X;        // the solved bra vector
    Cplx u, v;           // X = u pi_R(c_{-2}) + v pi_R(c_{-1}^2) when reduction holds
    Cplx mu, nu;         // X = mu pi_R(h^(2)_a) + nu pi_R(c_{-1}^2)
    Cplx xi1, xi2, xi, eta, x1, x2;
    bool reduction_ok = false;
};

inline XSolveResult solve_x_level2(Cplx a, const ModelParams& params) {
    const Cplx rho = std::exp(Cplx(0, kPi) * a);
    const Cplx omega = params.omega();
    const Cplx c = rho + 1.0 / rho;
    const Cplx wbar = omega - 1.0 / omega;
    XSolveResult out;
    // paper's consistency conditions
    const Cplx q(1, 0), eta(1, 0);
    Cplx s2 = -wbar * wbar / std::pow(c, 4) * q;
    Cplx s = std::sqrt(s2);
    Cplx disc = std::sqrt(s * s - 4.0 * q);
    out.xi1 = (s + disc) / 2.0;
    out.xi2 = (s - disc) / 2.0;
    out.eta = eta;
    out.xi = wbar / (c * c) * eta;
    out.x1 = Cplx(1, 0);
    out.x2 = c * q / (eta * eta);
    auto st1 = level_state_coefficients({out.xi1, out.xi2}, {}, a, 2, params);
    auto st2 = level_state_coefficients({out.xi}, {out.eta}, a, 2, params);
    out.X = st1.levels[2] * out.x1 + st2.levels[2] * out.x2;
    out.reduction_ok = reduction_check(out.X, 1e-9);
    const HeisenbergSpec heis(params);
    Cplx A2 = heis.a_plus(2);
    Cplx cu(0), cv(0);
    for (auto& [m, cc] : out.X.terms()) {
        if (m == FockVector::Monomial{{-1, 2}}) cu = cc;
        if (m == (FockVector::Monomial{{-1, 1}, {-1, 1}})) cv = cc;
    }
    out.u = cu * A2;
    out.v = cv * A2;
    Cplx dminus = std::sin(kPi * params.p) - std::sin(2.0 * kPi * a);
    out.mu = out.u * dminus;
    out.nu = out.v + Cplx(0, 1) * std::tan(kPi * a) * out.u;
    return out;
}

// --- W-residue check --------------------------------------------------------------
// 2 pi sin^2(pi p) sin(2 pi p) Res_{a = -(p+1)/2} tilde-J^{h2_a hbar2_{-a}}_{N,a}(X)
// must equal J_{N, (3p-1)/2}(X). Residue by a small circular contour.
inline std::pair<Cplx, Cplx> w_residue_check(const std::vector<Cplx>& xs,
                                             const ModelParams& params, double radius = 1e-3,
                                             int points = 64);

inline std::pair<Cplx, Cplx> w_residue_check(const std::vector<Cplx>& xs,
                                             const ModelParams& params, double radius,
                                             int points) {
    const Cplx p = params.p;
    const Cplx astar = -(p + 1.0) / 2.0;
    Cplx res(0);
    for (int k = 0; k < points; ++k) {
        double phi = 2.0 * kPi * k / points;
        Cplx aa = astar + std::polar(radius, phi);
        Element h = h2_element(aa, params.p);
        Element hb = h2_element(-aa, params.p);
        Cplx val = matrix_element_tilde(h, hb, xs, aa, params);
        res += val * std::polar(radius, phi);
    }
    res /= double(points);
    Cplx sp = std::sin(kPi * p);
    Cplx lhs = 2.0 * kPi * sp * sp * std::sin(2.0 * kPi * p) * res;
    Cplx a_rhs = (3.0 * p - 1.0) / 2.0;
    Cplx rhs = j_direct(Element::one(), a_rhs, xs, params).value;
    return {lhs, rhs};
}

}  // namespace descff
