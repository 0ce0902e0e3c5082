#include "test_util.hpp"

using namespace descff;
using tst::rel_err;

TEST_CASE("kink constants") {
    auto params = tst::params_at(0.3);
    // K_1 = 2 sin(pi p/2)
    REQUIRE(rel_err(kink_constant(1, params), Cplx(2 * std::sin(kPi * 0.15), 0)) < 1e-14);
    // K_2 = -2i sin(pi p)
    REQUIRE(rel_err(kink_constant(2, params), Cplx(0, -2 * std::sin(kPi * 0.3))) < 1e-14);
    // small p: K_n vanishes linearly
    auto small = tst::params_at(1e-8);
    REQUIRE(std::abs(kink_constant(3, small)) < 1e-7);
    REQUIRE_THROWS_AS(kink_constant(0, params), domain_error);
}

TEST_CASE("Q functional basics") {
    auto params = tst::params_at(0.31);
    auto g = tst::rng(91);
    auto xs = tst::rand_points(g, 3);
    auto zs = tst::rand_points(g, 2);
    // Q^{C_{-1}-normalized c_{-1}} = S_1(X)/K_1
    Cplx q1 = q_eval(Element::generator(1), xs, zs, params);
    REQUIRE(rel_err(q1, power_sum(1, xs) / kink_constant(1, params)) < 1e-13);
    // symmetric in X and Z separately
    std::vector<Cplx> xs2 = {xs[2], xs[0], xs[1]};
    std::vector<Cplx> zs2 = {zs[1], zs[0]};
    Element h = Element::generator(2) * Element::generator(1);
    REQUIRE(rel_err(q_eval(h, xs, zs, params), q_eval(h, xs2, zs2, params)) < 1e-13);
    // homogeneity of degree n
    Cplx lam = tst::rand_point(g);
    std::vector<Cplx> xl, zl;
    for (auto& x : xs) xl.push_back(lam * x);
    for (auto& z : zs) zl.push_back(lam * z);
    REQUIRE(rel_err(q_eval(h, xl, zl, params), std::pow(lam, 3) * q_eval(h, xs, zs, params)) <
            1e-12);
}

TEST_CASE("chain equation") {
    auto params = tst::params_at(0.29);
    auto g = tst::rng(92);
    auto xs = tst::rand_points(g, 2);
    auto zs = tst::rand_points(g, 1);
    for (int lvl = 1; lvl <= 4; ++lvl) {
        Element h = tst::random_homogeneous_element(g, lvl, 0);
        Cplx defect = chain_defect(h, xs, zs, tst::rand_point(g), params);
        Cplx scale = q_eval(h, xs, zs, params);
        REQUIRE(std::abs(defect) < 1e-12 * (1.0 + std::abs(scale)));
    }
}

TEST_CASE("current identity A(x)A(-x)D(ix) = 1 at the functional level") {
    // equivalent statement: the chain equation with empty (X, Z)
    auto params = tst::params_at(0.33);
    auto g = tst::rng(93);
    for (auto& lam : enumerate_partitions(3)) {
        Element h = Element::monomial(lam, Partition{}, Cplx(1));
        Cplx defect = chain_defect(h, {}, {}, tst::rand_point(g), params);
        REQUIRE(std::abs(defect) < 1e-13);
    }
}

TEST_CASE("breather-kink relation PQrel") {
    auto params = tst::params_at(0.31);
    auto g = tst::rng(94);
    REQUIRE(pq_consistency(Element::one(), {}, {}, params).pass);
    REQUIRE(pq_consistency(Element::generator(1), tst::rand_points(g, 1), tst::rand_points(g, 1),
                           params)
                .pass);
    Element h = Element::generator(2) * Element::generator(1);
    REQUIRE(pq_consistency(h, tst::rand_points(g, 2), tst::rand_points(g, 2), params).pass);
    for (int rep = 0; rep < 5; ++rep) {
        Element e = tst::random_homogeneous_element(g, 3, 0);
        auto r = pq_consistency(e, tst::rand_points(g, 2), tst::rand_points(g, 1), params);
        INFO("deviation " << r.deviation);
        REQUIRE(r.pass);
    }
}

TEST_CASE("kink-sector level ranks") {
    auto params = tst::params_at(0.31);
    auto g = tst::rng(95);
    REQUIRE(level_rank_q(2, params, 4, g) == 2);
    REQUIRE(level_rank_q(4, params, 8, g) == 5);
}
