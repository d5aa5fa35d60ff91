#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "simstab/errors.hpp"
#include "simstab/jet.hpp"
#include "simstab/ratfun.hpp"

using namespace simstab;

namespace {
Jet make_jet(Complex center, std::initializer_list<Complex> cs) {
    return Jet(center, std::vector<Complex>(cs));
}
} // namespace

TEST_CASE("rat_jet: geometric series") {
    RatFun r = RatFun::reduced(RealPoly::constant(1.0), RealPoly({-1.0, 1.0})); // 1/(1-s)
    Jet j = r.jet_at(0.0, 3);
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(j.coeffs[static_cast<size_t>(k)] - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("rat_jet at a pole fails") {
    RatFun r = RatFun::reduced(RealPoly::constant(1.0), RealPoly({1.0, -1.0})); // 1/(s-1)
    CHECK_THROWS_AS(r.jet_at(1.0, 2), DomainError);
}

TEST_CASE("jet_sqrt on fixed data") {
    // (2+t)^2 = 4 + 4t + t^2
    Jet j = jet_sqrt(make_jet(0.0, {4.0, 4.0, 1.0}));
    CHECK(std::abs(j.coeffs[0] - Complex(2.0, 0.0)) < 1e-14);
    CHECK(std::abs(j.coeffs[1] - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(j.coeffs[2]) < 1e-14);

    Jet id = jet_sqrt(make_jet(0.0, {1.0, 0.0, 0.0}));
    CHECK(std::abs(id.coeffs[0] - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(id.coeffs[1]) < 1e-14);
}

TEST_CASE("jet_sqrt branch failure on the nonpositive axis") {
    CHECK_THROWS_AS(jet_sqrt(make_jet(0.0, {-1.0, 1.0})), DomainError);
    CHECK_THROWS_AS(jet_sqrt(make_jet(0.0, {0.0, 1.0})), DomainError);
    CHECK_NOTHROW(jet_sqrt(make_jet(0.0, {Complex(-1.0, 0.5), 1.0}))); // off the axis is fine
}

TEST_CASE("jet_sqrt round trip (property)") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        int order = 1 + static_cast<int>(rng() % 6);
        std::vector<Complex> cs(static_cast<size_t>(order));
        for (auto& c : cs)
            c = Complex(U(rng), U(rng));
        cs[0] = Complex(std::abs(U(rng)) + 0.2, U(rng)); // Re > 0
        Jet g(Complex(U(rng), U(rng)), cs);
        Jet back = jet_sqrt(jet_mul(g, g));
        for (int k = 0; k < order; ++k)
            CHECK(std::abs(back.coeffs[static_cast<size_t>(k)] - g.coeffs[static_cast<size_t>(k)]) <
                  1e-12);
    }
}

TEST_CASE("jet_mul/jet_div invert each other") {
    Jet a = make_jet(1.0, {2.0, -1.0, 0.5, 0.25});
    Jet b = make_jet(1.0, {1.5, 0.7, -0.3, 0.1});
    Jet q = jet_div(jet_mul(a, b), b);
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(q.coeffs[static_cast<size_t>(k)] - a.coeffs[static_cast<size_t>(k)]) < 1e-13);
    CHECK_THROWS_AS(jet_div(a, make_jet(1.0, {0.0, 1.0, 0.0, 0.0})), DomainError);
}

TEST_CASE("jet_compose_mobius basics") {
    MobiusMap m = MobiusMap::rhp_from_disc(); // s = (1-z)/(1+z)
    // constants pass through any map
    Jet c = make_jet(m(Complex(0.3, 0.0)), {0.5, 0.0});
    Jet composed = jet_compose_mobius(c, m, 0.3);
    CHECK(std::abs(composed.coeffs[0] - Complex(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(composed.coeffs[1]) < 1e-14);

    // first-order chain rule: out[1] = in[1] * m'(new_center)
    Jet j = make_jet(m(Complex(0.2, 0.0)), {1.0, 0.75, -0.3});
    Jet out = jet_compose_mobius(j, m, 0.2);
    CHECK(std::abs(out.coeffs[1] - j.coeffs[1] * m.derivative(0.2)) < 1e-13);

    // center mismatch is rejected
    CHECK_THROWS_AS(jet_compose_mobius(make_jet(123.0, {1.0, 0.0}), m, 0.2), DomainError);
}

TEST_CASE("jet_compose_mobius matches a direct rational composition (property)") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(-0.7, 0.7);
    MobiusMap m = MobiusMap::rhp_from_disc();
    for (int trial = 0; trial < 20; ++trial) {
        // random rational function, expand at m(z0) and compose
        RatFun r = RatFun::reduced(RealPoly({U(rng), 1.0, U(rng)}), RealPoly({1.0, 2.0 + U(rng), 2.0}));
        Complex z0(U(rng), 0.0);
        Complex s0 = m(z0);
        Jet direct = mobius_substitute(r, m).jet_at(z0, 4);
        Jet composed = jet_compose_mobius(r.jet_at(s0, 4), m, z0);
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(direct.coeffs[static_cast<size_t>(k)] -
                           composed.coeffs[static_cast<size_t>(k)]) < 1e-11);
    }
}

TEST_CASE("disc transport of the largest eta zero of the first example") {
    // s0 -> z0 = (1-s0)/(1+s0)
    double s0 = 19.206044271102078;
    Complex z0 = MobiusMap::disc_from_rhp()(Complex(s0, 0.0));
    CHECK(test::rel_err(z0.real(), -0.90101971602327277) < 1e-12);
    // the reported rational rounding -1502/1667 of the paper's node agrees
    // at its own precision
    CHECK(test::rel_err(z0.real(), -1502.0 / 1667.0) < 1e-6);
}

TEST_CASE("jet_eval reproduces function values") {
    RatFun r = RatFun::reduced(RealPoly({1.0, 2.0, 2.0}), RealPoly({1.0, 3.0, 3.0, 1.0}));
    Jet j = r.jet_at(Complex(0.4, 0.1), 8);
    Complex near = Complex(0.45, 0.08);
    CHECK(std::abs(jet_eval(j, near) - r(near)) < 1e-9);
}
