#pragma once

// Numerics shared by the special-function evaluations: adaptive Gauss-Kronrod,
// Cauchy-contour Laurent coefficients, the complex exponential integral E1 with
// analytic continuation, and the regularized semi-infinite integral driver
// (numeric head + exponential-lattice E1 tail).

#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "core.hpp"

namespace descff {

using Integrand = std::function<Cplx(double)>;

namespace detail {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule.
inline const double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline const double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline const double kGaussW[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                  0.417959183673469};

struct PanelResult {
    Cplx value;
    double error;
};

inline PanelResult gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Cplx fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kKronrodX[i]);
        fv[14 - i] = f(c + h * kKronrodX[i]);
    }
    fv[7] = f(c);
    Cplx kron(0), gauss(0);
    for (int i = 0; i < 8; ++i) {
        kron += kKronrodW[i] * (i == 7 ? fv[7] : fv[i] + fv[14 - i]);
    }
    for (int i = 0; i < 4; ++i) {
        int j = 2 * i + 1;
        gauss += kGaussW[i] * (j == 7 ? fv[7] : fv[j] + fv[14 - j]);
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

}  // namespace detail

struct QuadResult {
    Cplx value;
    double error;
    int panels;
};

inline QuadratureSpec quad_with_T(QuadratureSpec spec, double T) {
    spec.truncation = T;
    return spec;
}

// Adaptive GK15 on [a, b]; complex-valued integrand of a real variable.
inline QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    struct Item {
        double a, b, err;
        Cplx val;
        bool operator<(const Item& o) const { return err < o.err; }
    };
    std::priority_queue<Item> q;
    auto first = detail::gk15(f, a, b);
    q.push({a, b, first.error, first.value});
    Cplx total = first.value;
    double toterr = first.error;
    int panels = 1;
    while (toterr > spec.abs_target + spec.rel_target * std::abs(total) && panels < spec.max_panels) {
        Item it = q.top();
        q.pop();
        double mid = 0.5 * (it.a + it.b);
        auto l = detail::gk15(f, it.a, mid);
        auto r = detail::gk15(f, mid, it.b);
        total += l.value + r.value - it.val;
        toterr += l.error + r.error - it.err;
        q.push({it.a, mid, l.error, l.value});
        q.push({mid, it.b, r.error, r.value});
        ++panels;
    }
    if (toterr > 10.0 * (spec.abs_target + spec.rel_target * std::abs(total)))
        throw numeric_error("quadrature failed to converge", toterr);
    return {total, std::max(toterr, 0.0), panels};
}

// Laurent coefficients c_k (kmin <= k <= kmax) of an analytic f around t = 0 via
// the trapezoid rule on |t| = radius; exponentially accurate.
inline std::vector<Cplx> laurent_coefficients(const std::function<Cplx(Cplx)>& f, int kmin,
                                              int kmax, double radius, int points = 128) {
    std::vector<Cplx> vals(points);
    for (int j = 0; j < points; ++j) {
        double phi = 2.0 * kPi * j / points;
        vals[j] = f(std::polar(radius, phi));
    }
    std::vector<Cplx> out(kmax - kmin + 1, Cplx(0));
    for (int k = kmin; k <= kmax; ++k) {
        Cplx s(0);
        for (int j = 0; j < points; ++j) {
            double phi = 2.0 * kPi * j / points;
            s += vals[j] * std::polar(std::pow(radius, -k), -k * phi);
        }
        out[k - kmin] = s / double(points);
    }
    return out;
}

// Exponential integral E1(z), principal branch, analytically continued across
// Re z < 0 (branch fixed just below the cut: E1(-x - i0) for x > 0).
inline Cplx expint_e1(Cplx z) {
    double az = std::abs(z);
    if (az == 0.0) throw domain_error("E1(0) diverges");
    if (z.real() > 0.0 && az > 2.0) {
        // modified Lentz continued fraction: E1 = exp(-z)/(z+1- 1/(z+3- 4/(z+5-...)))
        const double tiny = 1e-290;
        Cplx b = z + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
        for (int i = 1; i <= 300; ++i) {
            Cplx an = -double(i) * double(i);
            b += 2.0;
            d = an * d + b;
            if (std::abs(d) < tiny) d = tiny;
            c = b + an / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            Cplx del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < 1e-17) break;
        }
        return std::exp(-z) * h;
    }
    if (az <= 60.0) {
        // power series: E1 = -gamma - log z + sum (-1)^{k+1} z^k/(k k!)
        // stable because for Re z < 0 all series terms carry the same sign.
        const double euler = 0.57721566490153286060651209;
        Cplx sum(0), term(1);
        for (int k = 1; k <= 900; ++k) {
            term *= -z / double(k);
            Cplx add = -term / double(k);
            sum += add;
            if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)) && k > 4) break;
        }
        Cplx lg = std::log(z);
        if (z.imag() == 0.0 && z.real() < 0.0) lg = std::log(-z) - Cplx(0, kPi);  // below the cut
        return -euler - lg + sum;
    }
    // large |z| in the left half plane: asymptotic series e^{-z}/z (1 - 1/z + 2/z^2 ...)
    Cplx s(1), term(1);
    for (int k = 1; k <= 40; ++k) {
        term *= -double(k) / z;
        if (std::abs(term) > 1.0) break;
        s += term;
    }
    Cplx val = std::exp(-z) / z * s;
    if (z.imag() == 0.0 && z.real() < 0.0) val += Cplx(0, kPi);  // same branch as the series above
    return val;
}

// One term of an exponential tail: f(t) ~ sum coeff * e^{-rate t}/t for t >= T.
struct TailTerm {
    Cplx coeff;
    Cplx rate;
};

// sum coeff * E1(rate * T)
inline Cplx tail_sum(const std::vector<TailTerm>& terms, double T) {
    Cplx total(0);
    for (const auto& t : terms) total += t.coeff * expint_e1(t.rate * T);
    return total;
}

// Regularized integral of f over (0, infinity) per the double-pole prescription:
//   lim_{eps->0} [ int_eps^inf f dt - Res(t f)/eps + log(eps) Res(f) ].
// `f_complex` must be analytic in a disc around 0 of radius > series_radius;
// `tail` carries exact exp-lattice terms valid for t >= truncation.
struct RegularizedIntegral {
    std::function<Cplx(Cplx)> f_complex;  // same integrand, complex argument
    std::vector<TailTerm> tail;           // valid on [T, inf)
    double contour_radius = 0.3;

    // Returns the regularized value; c2/c1 receive the Laurent data if wanted.
    Cplx evaluate(const QuadratureSpec& spec, Cplx* res_double = nullptr,
                  Cplx* res_simple = nullptr) const {
        const double s = spec.series_radius;
        const double T = spec.truncation;
        // Laurent coefficients c_{-2} .. c_{K} of f around 0
        const int K = 40;
        auto c = laurent_coefficients(f_complex, -2, K, contour_radius, 256);
        Cplx A = c[0], B = c[1];
        if (res_double) *res_double = A;
        if (res_simple) *res_simple = B;
        // int_0^s (f - A/t^2 - B/t) dt by the convergent series
        Cplx head(0);
        double sk = s;
        for (int k = 0; k <= K; ++k) {
            head += c[k + 2] * sk / double(k + 1);
            sk *= s;
        }
        // middle: direct quadrature of f on [s, T]
        Integrand live = [this](double t) { return f_complex(Cplx(t, 0.0)); };
        QuadResult mid = integrate(live, s, T, spec);
        Cplx result = head - A / s + B * std::log(s) + mid.value + tail_sum(tail, T);
        return result;
    }
};

}  // namespace descff
