#include "test_util.hpp"

using namespace descff;
using tst::rel_err;

static const QuadratureSpec kSpec;

TEST_CASE("f kernel") {
    auto params = tst::params_at(0.31);
    const Cplx w = params.omega();
    // f(infinity) -> 1
    REQUIRE(std::abs(f_kernel(Cplx(1e8, 3e7), params) - 1.0) < 1e-7);
    // f(-x) = f(1/x)
    auto g = tst::rng(21);
    for (int i = 0; i < 5; ++i) {
        Cplx x = tst::rand_point(g);
        REQUIRE(rel_err(f_kernel(-x, params), f_kernel(1.0 / x, params)) < 1e-13);
    }
    // residue at x=1: lim (x-1) f(x) = (w - 1/w)/2
    Cplx x = 1.0 + Cplx(1e-7, 0);
    REQUIRE(rel_err((x - 1.0) * f_kernel(x, params), (w - 1.0 / w) / 2.0) < 1e-6);
    REQUIRE_THROWS_AS(f_kernel(Cplx(1, 0), params), domain_error);
    REQUIRE_THROWS_AS(f_kernel(Cplx(-1, 0), params), domain_error);
    REQUIRE_THROWS_AS(f_kernel(Cplx(0, 0), params), domain_error);
}

TEST_CASE("lambda prime") {
    // two independent rules agree
    auto params = tst::params_at(0.5);
    Cplx a = lambda_prime(params, kSpec);
    Cplx b = lambda_prime_simpson(params);
    REQUIRE(rel_err(a, b) < 1e-10);
    // p -> 0: lambda' ~ (pi p)^{-1/2}
    auto small = tst::params_at(1e-6);
    Cplx lp = lambda_prime(small, kSpec);
    REQUIRE(rel_err(lp, std::pow(kPi * 1e-6, -0.5)) < 1e-5);
    // finite positive real on (0,1)
    for (double p : {0.1, 0.45, 0.8}) {
        Cplx v = lambda_prime(tst::params_at(p), kSpec);
        REQUIRE(v.real() > 0);
        REQUIRE(std::abs(v.imag()) < 1e-12 * v.real());
    }
}

TEST_CASE("minimal R: pair relation and symmetry") {
    // R(theta - i pi) R(theta) (sh th + i sin pi p)/sh th = 1, both signs of p
    for (double p : {-0.4, 0.3}) {
        auto params = tst::params_at(p);
        for (double th : {0.83, 1.7}) {
            Cplx t(th, 0);
            Cplx lhs = minimal_r(t - Cplx(0, kPi), params, kSpec) * minimal_r(t, params, kSpec) *
                       (std::sinh(t) + Cplx(0, 1) * std::sin(kPi * p)) / std::sinh(t);
            REQUIRE(rel_err(lhs, Cplx(1, 0)) < 1e-9);
        }
    }
    // R is even about theta = -i pi (trace cyclicity R(th) = R(-th - 2 i pi))
    auto params = tst::params_at(0.3);
    Cplx c = Cplx(0, -kPi);
    Cplx ra = minimal_r(c + 0.6, params, kSpec);
    Cplx rb = minimal_r(c - 0.6, params, kSpec);
    REQUIRE(rel_err(ra, rb) < 1e-11);
    // p -> 0: R -> 1
    REQUIRE(std::abs(minimal_r(Cplx(0.83, 0), tst::params_at(1e-6), kSpec) - 1.0) < 1e-5);
}

TEST_CASE("vev G_a and the reflection constant") {
    auto params = tst::params_at(0.3);
    // a = -1/2 (alpha = 0): identity operator, G = 1
    REQUIRE(rel_err(vev_g(Cplx(-0.5, 0), params, kSpec), Cplx(1, 0)) < 1e-12);
    // R_0 = 1 and R_a R_{-a} = 1
    REQUIRE(rel_err(reflection_const(Cplx(0, 0), params), Cplx(1, 0)) < 1e-12);
    auto g = tst::rng(22);
    for (int i = 0; i < 4; ++i) {
        Cplx a(0.04 + 0.05 * i, 0.01 * i);
        Cplx prod = reflection_const(a, params) * reflection_const(-a, params);
        REQUIRE(rel_err(prod, Cplx(1, 0)) < 1e-12);
    }
    // G_a = R_a G_{-a} inside the convergence strip
    Cplx a(0.05, 0);
    REQUIRE(rel_err(vev_g(a, params, kSpec),
                    reflection_const(a, params) * vev_g(-a, params, kSpec)) < 1e-10);
    // and beyond it (a = 0.17 > p/2), via the continued tail
    a = Cplx(0.17, 0);
    REQUIRE(rel_err(vev_g(a, params, kSpec),
                    reflection_const(a, params) * vev_g(-a, params, kSpec)) < 1e-6);
    // reflection applied twice: G_a vs G_{-1-a}-route consistency
    // G_a = R_a G_{-a}; the same identity at the shifted argument closes the loop
    Cplx a2(0.08, 0);
    Cplx lhs = vev_g(a2, params, kSpec) / vev_g(-a2, params, kSpec);
    REQUIRE(rel_err(lhs, reflection_const(a2, params)) < 1e-9);
    // the probe a <-> -1-a: alpha -> -alpha leaves both the exponent alpha^2
    // and the t-integrand invariant, so G_a = G_{-1-a}
    REQUIRE(rel_err(vev_g(a2, params, kSpec), vev_g(-1.0 - a2, params, kSpec)) < 1e-10);
    // Gamma pole detection
    REQUIRE_THROWS_AS(reflection_const(Cplx(0.3, 0), params), domain_error);
}

TEST_CASE("kink pair function G(theta)") {
    auto params = tst::params_at(0.25);
    // the two representations agree
    auto g = tst::rng(23);
    for (double th : {0.7, 1.9, 3.3}) {
        Cplx g1 = kink_g_rep(1, Cplx(th, 0), params, kSpec);
        Cplx g2 = kink_g_rep(2, Cplx(th, 0), params, kSpec);
        REQUIRE(rel_err(g1, g2) < 1e-6);
    }
    // zero at theta = 0 (second representation carries sinh(theta/2))
    REQUIRE(std::abs(kink_g(Cplx(0, 0), params, kSpec)) < 1e-8);
    // asymptotic growth rate of the defining integral representation:
    // log|G| gains (p+1)/(4p) per unit theta (the stated decay rate
    // -(p+1)/(2p) belongs to the derived combination W = G^{-1}G^{-1})
    double p = 0.25;
    Cplx ga = kink_g(Cplx(16, 0), params, kSpec);
    Cplx gb = kink_g(Cplx(22, 0), params, kSpec);
    double slope = (std::log(std::abs(gb)) - std::log(std::abs(ga))) / 6.0;
    REQUIRE(std::abs(slope - (p + 1) / (4 * p)) < 2e-3);
}
