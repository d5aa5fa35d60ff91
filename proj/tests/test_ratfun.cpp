#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "simstab/errors.hpp"
#include "simstab/ratfun.hpp"

using namespace simstab;

TEST_CASE("rat_reduce cancels exact common factors") {
    // (s^2 - 1)/(s - 1) -> s + 1
    RatFun r = rat_reduce(RealPoly({1.0, 0.0, -1.0}), RealPoly({1.0, -1.0}));
    CHECK(r.num().coeffs() == std::vector<double>{1.0, 1.0});
    CHECK(r.den().degree() == 0);
    CHECK(r.den().leading() == doctest::Approx(1.0));
}

TEST_CASE("rat_reduce keeps coprime functions unchanged") {
    auto x0 = test::from_factors({15, 6}, {-0.5, -1.2});
    CHECK(x0.num().degree() == 2);
    CHECK(x0.den().degree() == 2);
    CHECK(x0(1.0) == doctest::Approx((1.0 - 15) * (1.0 - 6) / ((1.5) * (2.2))));
}

TEST_CASE("rat_reduce cancels within tolerance and reports exactly outside it") {
    // ((s - 1 + 1e-12)(s + 2)) / ((s - 1)(s + 3)) with tol 1e-9 -> (s+2)/(s+3)
    RealPoly num = RealPoly({1.0, -(1.0 - 1e-12)}) * RealPoly({1.0, 2.0});
    RealPoly den = RealPoly({1.0, -1.0}) * RealPoly({1.0, 3.0});
    RatFun r = rat_reduce(num, den, 1e-9);
    REQUIRE(r.num().degree() == 1);
    CHECK(r.num().coeff(1) == doctest::Approx(2.0));
    CHECK(r.den().coeff(1) == doctest::Approx(3.0));

    // same pair separated by 1e-3 stays unreduced at tol 1e-9
    RealPoly num2 = RealPoly({1.0, -(1.0 - 1e-3)}) * RealPoly({1.0, 2.0});
    RatFun r2 = rat_reduce(num2, den, 1e-9);
    CHECK(r2.num().degree() == 2);
}

TEST_CASE("rat_reduce rejects a zero denominator") {
    CHECK_THROWS_AS(rat_reduce(RealPoly::constant(1.0), RealPoly()), DomainError);
}

TEST_CASE("membership_H") {
    auto y1 = test::from_factors({11, -1}, {-0.9, -0.4});
    CHECK(membership_H(y1).in_H);

    RatFun unstable = RatFun::reduced(RealPoly::constant(1.0), RealPoly({1.0, -1.0}));
    auto m = membership_H(unstable);
    CHECK_FALSE(m.in_H);
    CHECK(m.reason.find("pole") != std::string::npos);

    RatFun improper = RatFun::reduced(RealPoly({1.0, 0.0}), RealPoly::constant(1.0)); // s
    auto m2 = membership_H(improper);
    CHECK_FALSE(m2.in_H);
    CHECK(m2.reason.find("improper") != std::string::npos);
}

TEST_CASE("mobius_substitute basics") {
    MobiusMap m = MobiusMap::disc_from_rhp(); // (1-s)/(1+s)
    RatFun id = RatFun::reduced(RealPoly({1.0, 0.0}), RealPoly::constant(1.0)); // z
    RatFun sub = mobius_substitute(id, m);
    CHECK(sub(2.0) == doctest::Approx((1.0 - 2.0) / (1.0 + 2.0)));

    RatFun half = RatFun::constant(0.5);
    CHECK(mobius_substitute(half, m)(3.7) == doctest::Approx(0.5));
}

TEST_CASE("mobius_substitute involution round trip (property)") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    MobiusMap inv = MobiusMap::disc_from_rhp(); // self-inverse
    for (int trial = 0; trial < 20; ++trial) {
        RealPoly num({U(rng), U(rng), 1.0 + U(rng)});
        RealPoly den({1.0, 2.5 + U(rng), 2.0 + U(rng)});
        RatFun r = RatFun::reduced(num, den);
        RatFun back = mobius_substitute(mobius_substitute(r, inv), inv);
        REQUIRE(back.num().degree() == r.num().degree());
        REQUIRE(back.den().degree() == r.den().degree());
        for (int i = 0; i <= r.num().degree(); ++i)
            CHECK(std::abs(back.num().coeff(i) - r.num().coeff(i)) < 1e-10);
        for (int i = 0; i <= r.den().degree(); ++i)
            CHECK(std::abs(back.den().coeff(i) - r.den().coeff(i)) < 1e-10);
    }
}

TEST_CASE("jets of the second example's target ratios") {
    auto p = test::ex2_plants();
    // x1/x0 at s = 1: value 2431/1260, derivative frozen from the oracle
    Jet jx = (p.x1 / p.x0).jet_at(1.0, 2);
    CHECK(test::rel_err(jx.coeffs[0].real(), 2431.0 / 1260.0) < 1e-12);
    CHECK(test::rel_err(jx.coeffs[1].real(), 0.027768329554043896) < 1e-9);
    // y1/y0 at s = 0.2: value 19/26
    Jet jy = (p.y1 / p.y0).jet_at(0.2, 1);
    CHECK(test::rel_err(jy.coeffs[0].real(), 19.0 / 26.0) < 1e-12);
}

TEST_CASE("rat_jet evaluation consistency (property)") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        RealPoly num({U(rng), U(rng), 1.0});
        RealPoly den({1.0, U(rng), 1.5 + std::abs(U(rng))});
        RatFun r = RatFun::reduced(num, den);
        Complex s0(U(rng), U(rng));
        if (std::abs(r.den()(s0)) < 0.2)
            continue;
        Jet j = r.jet_at(s0, 1);
        CHECK(std::abs(j.coeffs[0] - r(s0)) < 1e-12);
    }
}

TEST_CASE("value_at_infinity and relative degree") {
    auto x0 = test::from_factors({15, 6}, {-0.5, -1.2});
    CHECK(x0.value_at_infinity() == doctest::Approx(1.0));
    CHECK(x0.relative_degree() == 0);
    RatFun strict = RatFun::reduced(RealPoly::constant(2.0), RealPoly({1.0, 1.0}));
    CHECK(strict.value_at_infinity() == doctest::Approx(0.0));
    RatFun improper = RatFun::reduced(RealPoly({1.0, 0.0}), RealPoly::constant(1.0));
    CHECK_THROWS_AS(improper.value_at_infinity(), DomainError);
}

TEST_CASE("rational arithmetic") {
    RatFun a = RatFun::reduced(RealPoly({1.0, 0.0}), RealPoly({1.0, 1.0}));  // s/(s+1)
    RatFun b = RatFun::reduced(RealPoly::constant(1.0), RealPoly({1.0, 1.0})); // 1/(s+1)
    RatFun sum = a + b; // (s+1)/(s+1) = 1
    CHECK(sum.num().degree() == 0);
    CHECK(sum(3.3) == doctest::Approx(1.0));
    RatFun prod = a * b;
    CHECK(prod(2.0) == doctest::Approx(2.0 / 9.0));
    RatFun quot = a / b; // s
    CHECK(quot(5.0) == doctest::Approx(5.0));
}
