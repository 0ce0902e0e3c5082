#pragma once

// Core types shared by every module: scalar/complex traits, model parameters,
// quadrature settings, error types and random sampling of evaluation points.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace descff {

template <class R> struct complex_of {
    using type = std::complex<R>;
};
template <class R> using complex_t = typename complex_of<R>::type;

using Real = double;
using Cplx = std::complex<double>;

template <class R> constexpr R pi_v() { return R(3.14159265358979323846264338327950288L); }
inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Thrown when an input sits on a pole or a forbidden parameter point.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a quadrature or iteration fails to reach its target accuracy.
struct numeric_error : std::runtime_error {
    double achieved;
    numeric_error(const std::string& msg, double est) : std::runtime_error(msg), achieved(est) {}
};

// Thrown when a pole/Laurent fit does not reproduce the sampled values.
struct decomposition_error : std::runtime_error {
    explicit decomposition_error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Precision { Double, Extended };

// Model parameters: coupling p, omega = e^{i pi p}, mass scale and tolerances.
// The operator parameter `a` is passed separately to the functions that need it.
template <class R> struct BasicModelParams {
    using C = complex_t<R>;

    C p{R(0.3), R(0)};
    R m{1};
    R tolerance{R(1e-10)};
    R degeneracy_margin{R(1e-3)};
    Precision precision = Precision::Double;

    C omega() const {
        const C ipi(R(0), pi_v<R>());
        return exp(ipi * p);
    }
    C sin_pi_p() const { return sin(pi_v<R>() * p); }

    // J_1 = -m/2: eigenvalue constant of the first integral of motion.
    R momentum_constant() const { return -m / R(2); }
};

using ModelParams = BasicModelParams<double>;

// Distance of `a` to the lattice a = +-p/2, +-(1+p)/2 (mod 1), where the
// descendant <-> form-factor bijection breaks down.
inline double degeneracy_distance(Cplx a, Cplx p) {
    const Cplx pts[4] = {p / 2.0, -p / 2.0, (1.0 + p) / 2.0, -(1.0 + p) / 2.0};
    double best = 1e300;
    for (const Cplx& q : pts) {
        Cplx d = a - q;
        double re = d.real() - std::round(d.real());
        double dist = std::hypot(re, d.imag());
        best = std::min(best, dist);
    }
    return best;
}

inline void require_generic(Cplx a, const ModelParams& params) {
    double d = degeneracy_distance(a, params.p);
    if (d < params.degeneracy_margin)
        throw domain_error("parameter a is within " + std::to_string(d) +
                           " of the degeneracy lattice a = +-p/2, +-(1+p)/2 (mod 1)");
}

struct QuadratureSpec {
    int max_panels = 4000;
    double abs_target = 1e-12;
    double rel_target = 1e-11;
    double truncation = 8.0;    // switch point between quadrature and the E1 tail
    double series_radius = 0.25; // below this the integrand is summed as a series
};

// Random evaluation points on the annulus 0.5 <= |x| <= 2 with all pairwise
// ratios kept away from 1, -1, omega and 1/omega.
inline std::vector<Cplx> sample_annulus(std::mt19937_64& rng, int n, const ModelParams& params,
                                        double separation = 0.05) {
    std::uniform_real_distribution<double> mod(0.5, 2.0);
    std::uniform_real_distribution<double> arg(0.0, 2.0 * kPi);
    const Cplx w = params.omega();
    const Cplx bad[4] = {Cplx(1, 0), Cplx(-1, 0), w, 1.0 / w};
    std::vector<Cplx> pts;
    pts.reserve(n);
    int guard = 0;
    while ((int)pts.size() < n) {
        if (++guard > 100000) throw numeric_error("annulus sampling failed to separate points", 0);
        Cplx x = std::polar(mod(rng), arg(rng));
        bool ok = true;
        for (const Cplx& y : pts) {
            Cplx r = x / y;
            for (const Cplx& b : bad)
                if (std::abs(r - b) < separation || std::abs(1.0 / r - b) < separation) ok = false;
        }
        if (ok) pts.push_back(x);
    }
    return pts;
}

inline Cplx random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> arg(0.0, 2.0 * kPi);
    return std::polar(1.0, arg(rng));
}

}  // namespace descff
