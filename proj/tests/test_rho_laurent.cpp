#include "test_util.hpp"

using namespace descff;
using tst::rel_err;

TEST_CASE("rho laurent arithmetic and eval") {
    RhoLaurent a = RhoLaurent::monomial(1, Cplx(1, 0)) + RhoLaurent::monomial(-1, Cplx(1, 0));
    RhoLaurent b = RhoLaurent::monomial(2, Cplx(0, 1));
    RhoLaurent c = a * b;
    REQUIRE(c.coeff(3) == Cplx(0, 1));
    REQUIRE(c.coeff(1) == Cplx(0, 1));
    // termwise eval agrees with direct substitution
    Cplx rho = std::polar(1.0, 0.7);
    Cplx direct = (rho + 1.0 / rho) * Cplx(0, 1) * rho * rho;
    REQUIRE(rel_err(c.eval(rho), direct) < 1e-15);
    // a = 2 cos(pi a) at rho = e^{i pi a}
    REQUIRE(rel_err(a.eval_at_a(Cplx(0.2, 0)), Cplx(2 * std::cos(0.2 * kPi), 0)) < 1e-15);
}

TEST_CASE("zero coefficients are pruned") {
    RhoLaurent a = RhoLaurent::monomial(2, Cplx(1, 0));
    a.add(2, Cplx(-1, 0));
    REQUIRE(a.zero());
    REQUIRE(a.coeffs().empty());
    RhoLaurent b = RhoLaurent::monomial(0, Cplx(0, 0));
    REQUIRE(b.zero());
}

TEST_CASE("reflection and derivative") {
    RhoLaurent a = RhoLaurent::monomial(3, Cplx(2, 1)) + RhoLaurent::monomial(-1, Cplx(0, 1));
    RhoLaurent r = a.reflected();
    REQUIRE(r.coeff(-3) == Cplx(2, 1));
    REQUIRE(r.coeff(1) == Cplx(0, 1));
    // d/da rho^k = i pi k rho^k, cross-check by finite differences of eval
    Cplx at(0.23, 0);
    double h = 1e-6;
    Cplx fd = (a.eval_at_a(at + h) - a.eval_at_a(at - h)) / (2 * h);
    REQUIRE(rel_err(a.derivative_a().eval_at_a(at), fd) < 1e-8);
}

TEST_CASE("parity and palindromy") {
    RhoLaurent even = RhoLaurent::monomial(2, Cplx(1, 0)) + RhoLaurent::monomial(-2, Cplx(1, 0)) +
                      RhoLaurent::monomial(0, Cplx(3, 0));
    REQUIRE(even.has_parity(0));
    REQUIRE(!even.has_parity(1));
    REQUIRE(even.palindromy_defect() < 1e-16);
    RhoLaurent skew = even + RhoLaurent::monomial(2, Cplx(0.5, 0));
    REQUIRE(skew.palindromy_defect() > 0.4);
}
