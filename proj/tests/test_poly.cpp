#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "simstab/errors.hpp"
#include "simstab/poly.hpp"

using namespace simstab;

TEST_CASE("RealPoly basics") {
    RealPoly p({2.0, -3.0, 1.0}); // 2s^2 - 3s + 1
    CHECK(p.degree() == 2);
    CHECK(p(1.0) == doctest::Approx(0.0));
    CHECK(p(2.0) == doctest::Approx(3.0));
    CHECK(p.derivative().coeffs() == std::vector<double>{4.0, -3.0});

    RealPoly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == 0);
    CHECK(RealPoly({0.0, 0.0, 5.0}).degree() == 0); // leading zeros trimmed

    RealPoly prod = RealPoly({1.0, -1.0}) * RealPoly({1.0, 1.0});
    CHECK(prod.coeffs() == std::vector<double>{1.0, 0.0, -1.0});
}

TEST_CASE("taylor expansion by synthetic division") {
    // (s-1)^3 about 1: coefficients (0, 0, 0, 1)
    RealPoly p = RealPoly({1.0, -1.0}) * RealPoly({1.0, -1.0}) * RealPoly({1.0, -1.0});
    auto t = p.taylor(1.0, 4);
    CHECK(std::abs(t[0]) < 1e-14);
    CHECK(std::abs(t[1]) < 1e-14);
    CHECK(std::abs(t[2]) < 1e-14);
    CHECK(std::abs(t[3] - 1.0) < 1e-14);
}

TEST_CASE("poly_roots on factored quadratics") {
    // (s-15)(s-6)
    RealPoly p({1.0, -21.0, 90.0});
    auto r = poly_roots(p);
    REQUIRE(r.size() == 2);
    CHECK(r[0].root.real() == doctest::Approx(15.0));
    CHECK(r[0].multiplicity == 1);
    CHECK(r[1].root.real() == doctest::Approx(6.0));
    CHECK(r[1].multiplicity == 1);
}

TEST_CASE("poly_roots merges repeated roots") {
    // (z-0.5)^2
    RealPoly p({1.0, -1.0, 0.25});
    auto r = poly_roots(p);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0].root - Complex(0.5, 0.0)) < 1e-10);
    CHECK(r[0].multiplicity == 2);

    // (z-0.5)^3 needs the gcd cross-check to widen the cluster radius
    RealPoly q = RealPoly({1.0, -0.5}) * RealPoly({1.0, -0.5}) * RealPoly({1.0, -0.5});
    auto r3 = poly_roots(q);
    REQUIRE(r3.size() == 1);
    CHECK(std::abs(r3[0].root - Complex(0.5, 0.0)) < 1e-9);
    CHECK(r3[0].multiplicity == 3);
}

TEST_CASE("poly_roots errors") {
    CHECK_THROWS_AS(poly_roots(RealPoly()), DomainError);
    CHECK(poly_roots(RealPoly::constant(3.0)).empty());
}

TEST_CASE("eta numerator of the first example has the two reported RHP roots") {
    auto p = test::ex1_plants();
    RealPoly num = p.x0.num() * p.y1.num() * (p.x1.den() * p.y0.den()) -
                   p.x1.num() * p.y0.num() * (p.x0.den() * p.y1.den());
    auto roots = poly_roots(num.trimmed(1e-12));
    std::vector<Complex> rhp;
    for (const auto& c : roots)
        if (c.root.real() > 0)
            rhp.push_back(c.root);
    REQUIRE(rhp.size() == 2);
    // true zeros, frozen from a high-precision run
    CHECK(test::rel_err(rhp[0].real(), 19.206044271102078) < 1e-9);
    CHECK(test::rel_err(rhp[1].real(), 4.4520018239914023) < 1e-9);
    // the reported values 3169/165 and 1113/250 are continued-fraction
    // roundings of these zeros; agreement holds at their printing precision
    CHECK(test::rel_err(rhp[0].real(), 3169.0 / 165.0) < 2e-6);
    CHECK(test::rel_err(rhp[1].real(), 1113.0 / 250.0) < 2e-6);
}

TEST_CASE("root multiset of a product is the union (property)") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Complex> ra, rb;
        int na = 1 + static_cast<int>(rng() % 4), nb = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < na; ++i)
            ra.emplace_back(U(rng), 0.0);
        for (int i = 0; i < nb; ++i) {
            if (i + 1 < nb && rng() % 2) {
                double re = U(rng), im = std::abs(U(rng)) + 0.1;
                rb.emplace_back(re, im);
                rb.emplace_back(re, -im);
                ++i;
            } else {
                rb.emplace_back(U(rng), 0.0);
            }
        }
        RealPoly a = RealPoly::from_roots(ra, 1.3);
        RealPoly b = RealPoly::from_roots(rb, -0.7);
        auto rp = poly_roots(a * b);
        int total = 0;
        for (const auto& c : rp) {
            total += c.multiplicity;
            bool in_a = false, in_b = false;
            for (auto r : ra)
                in_a = in_a || std::abs(r - c.root) < 1e-5 * (1.0 + std::abs(r));
            for (auto r : rb)
                in_b = in_b || std::abs(r - c.root) < 1e-5 * (1.0 + std::abs(r));
            CHECK((in_a || in_b));
        }
        CHECK(total == static_cast<int>(ra.size() + rb.size()));
    }
}

TEST_CASE("roots of real polynomials come in conjugate pairs (property)") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> coeffs(4 + static_cast<size_t>(rng() % 5));
        for (auto& c : coeffs)
            c = U(rng);
        if (std::abs(coeffs[0]) < 0.1)
            coeffs[0] = 1.0;
        auto clusters = poly_roots(RealPoly(coeffs));
        for (const auto& c : clusters) {
            if (c.root.imag() == 0.0)
                continue;
            bool paired = false;
            for (const auto& d : clusters)
                if (std::abs(d.root - std::conj(c.root)) < 1e-9 * (1.0 + std::abs(c.root)) &&
                    d.multiplicity == c.multiplicity)
                    paired = true;
            CHECK(paired);
        }
    }
}

TEST_CASE("stability_test") {
    // denominator of x0 in the first example: (s+0.5)(s+1.2)
    CHECK(stability_test(RealPoly({1.0, 1.7, 0.6}), StabilityRegion::OpenLeftHalfPlane).stable);
    CHECK(stability_test(RealPoly({1.0, -0.9}), StabilityRegion::OpenUnitDisc).stable);
    auto r = stability_test(RealPoly({1.0, -1.0}), StabilityRegion::OpenLeftHalfPlane);
    CHECK_FALSE(r.stable);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(std::abs(r.witnesses[0] - Complex(1.0, 0.0)) < 1e-12);
    // margin pushes a marginally stable root out
    CHECK_FALSE(stability_test(RealPoly({1.0, 0.95}), StabilityRegion::OpenUnitDisc, 0.1).stable);
}

TEST_CASE("approx_gcd_degree counts shared roots") {
    RealPoly a = RealPoly({1.0, -1.0}) * RealPoly({1.0, -1.0}) * RealPoly({1.0, 2.0});
    CHECK(approx_gcd_degree(a, a.derivative()) == 1); // (s-1) shared
    RealPoly b = RealPoly({1.0, 3.0}) * RealPoly({1.0, -4.0});
    CHECK(approx_gcd_degree(a, b) == 0);
}
