#pragma once

// Laurent polynomials in rho = e^{i pi a} with complex coefficients.
// Exact under reflection rho -> 1/rho and under d/da.

#include <cmath>
#include <map>

#include "core.hpp"

namespace descff {

template <class R> class BasicRhoLaurent {
  public:
    using C = complex_t<R>;

    BasicRhoLaurent() = default;
    explicit BasicRhoLaurent(C constant) {
        if (abs(constant) != R(0)) coeffs_[0] = constant;
    }
    static BasicRhoLaurent monomial(int degree, C coeff) {
        BasicRhoLaurent r;
        if (abs(coeff) != R(0)) r.coeffs_[degree] = coeff;
        return r;
    }

    const std::map<int, C>& coeffs() const { return coeffs_; }
    bool zero() const { return coeffs_.empty(); }

    C coeff(int degree) const {
        auto it = coeffs_.find(degree);
        return it == coeffs_.end() ? C(0) : it->second;
    }

    void add(int degree, C c) {
        auto it = coeffs_.emplace(degree, C(0)).first;
        it->second += c;
        if (abs(it->second) == R(0)) coeffs_.erase(it);
    }

    BasicRhoLaurent& operator+=(const BasicRhoLaurent& o) {
        for (auto& [d, c] : o.coeffs_) add(d, c);
        return *this;
    }
    BasicRhoLaurent& operator-=(const BasicRhoLaurent& o) {
        for (auto& [d, c] : o.coeffs_) add(d, -c);
        return *this;
    }
    friend BasicRhoLaurent operator+(BasicRhoLaurent a, const BasicRhoLaurent& b) { return a += b; }
    friend BasicRhoLaurent operator-(BasicRhoLaurent a, const BasicRhoLaurent& b) { return a -= b; }

    friend BasicRhoLaurent operator*(const BasicRhoLaurent& a, const BasicRhoLaurent& b) {
        BasicRhoLaurent r;
        for (auto& [da, ca] : a.coeffs_)
            for (auto& [db, cb] : b.coeffs_) r.add(da + db, ca * cb);
        return r;
    }
    BasicRhoLaurent& operator*=(const BasicRhoLaurent& o) { return *this = *this * o; }

    BasicRhoLaurent operator*(C s) const {
        BasicRhoLaurent r;
        for (auto& [d, c] : coeffs_) r.add(d, c * s);
        return r;
    }

    C eval(C rho) const {
        C total(0);
        for (auto& [d, c] : coeffs_) total += c * pow(rho, d);
        return total;
    }
    C eval_at_a(C a) const {
        const C ipi(R(0), pi_v<R>());
        return eval(exp(ipi * a));
    }

    // rho -> 1/rho, i.e. a -> -a
    BasicRhoLaurent reflected() const {
        BasicRhoLaurent r;
        for (auto& [d, c] : coeffs_) r.add(-d, c);
        return r;
    }

    // exact d/da: rho^k |-> i pi k rho^k
    BasicRhoLaurent derivative_a() const {
        BasicRhoLaurent r;
        const C ipi(R(0), pi_v<R>());
        for (auto& [d, c] : coeffs_) r.add(d, c * ipi * R(d));
        return r;
    }

    int min_degree() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
    int max_degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    // all degrees congruent to parity mod 2?
    bool has_parity(int parity) const {
        for (auto& [d, c] : coeffs_)
            if (((d % 2) + 2) % 2 != ((parity % 2) + 2) % 2) return false;
        return true;
    }

    // max |c_k - c_{-k}| over k; zero iff invariant under rho -> 1/rho
    R palindromy_defect() const {
        R worst(0);
        for (auto& [d, c] : coeffs_) {
            R diff = abs(c - coeff(-d));
            if (diff > worst) worst = diff;
        }
        return worst;
    }

    R max_abs() const {
        R worst(0);
        for (auto& [d, c] : coeffs_) worst = std::max(worst, abs(c));
        return worst;
    }

  private:
    std::map<int, C> coeffs_;
};

using RhoLaurent = BasicRhoLaurent<double>;

}  // namespace descff
