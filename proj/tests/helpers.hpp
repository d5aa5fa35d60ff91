#pragma once

#include <complex>
#include <random>
#include <vector>

#include "simstab/cee.hpp"
#include "simstab/interp.hpp"
#include "simstab/problem.hpp"
#include "simstab/ratfun.hpp"

namespace simstab::test {

inline RatFun from_factors(std::initializer_list<double> zeros, std::initializer_list<double> poles,
                           double gain = 1.0) {
    std::vector<Complex> z, p;
    for (double v : zeros)
        z.emplace_back(v, 0.0);
    for (double v : poles)
        p.emplace_back(v, 0.0);
    return RatFun::from_factors(z, p, gain);
}

// plants of the first worked example
inline PlantPair ex1_plants() {
    return make_plant_pair(from_factors({15, 6}, {-0.5, -1.2}),
                           from_factors({3, 18}, {-1.5, -0.3}),
                           from_factors({-9, 2}, {-0.7, -1.1}),
                           from_factors({11, -1}, {-0.9, -0.4}));
}

// plants of the second worked example (derivative constraint at s = 1)
inline PlantPair ex2_plants() {
    return make_plant_pair(from_factors({0.2, -0.5}, {-0.3, -0.7}),
                           from_factors({1, 1}, {-1.7, -0.2}),
                           from_factors({0.2, -1.2}, {-0.4, -1.4}, 2.0),
                           from_factors({1, 1}, {-1.1, -0.6}));
}

// published answer for the second example:
// 0.26463 (s+5.034)^2 (s+0.1448)^2 / (s^2 + 0.6404 s + 0.9181)^2
inline RatFun published_R_ex2() {
    RealPoly num =
        RealPoly({1.0, 5.034}) * RealPoly({1.0, 0.1448}) * RealPoly({1.0, 5.034}) *
        RealPoly({1.0, 0.1448}) * 0.26463;
    RealPoly den = RealPoly({1.0, 0.6404, 0.9181}) * RealPoly({1.0, 0.6404, 0.9181});
    return RatFun::reduced(num, den);
}

// published answer for the first example: 19.871 (s+0.1023)^2 / (s+9.988)^2
inline RatFun published_R_ex1() {
    RealPoly num = RealPoly({1.0, 0.1023}) * RealPoly({1.0, 0.1023}) * 19.871;
    RealPoly den = RealPoly({1.0, 9.988}) * RealPoly({1.0, 9.988});
    return RatFun::reduced(num, den);
}

// random monic Schur polynomial coefficient vector with real roots
inline Eigen::VectorXd random_schur_vec(std::mt19937& rng, int n, double rmax = 0.6) {
    std::uniform_real_distribution<double> U(-rmax, rmax);
    std::vector<Complex> roots;
    for (int i = 0; i < n; ++i)
        roots.emplace_back(U(rng), 0.0);
    RealPoly p = RealPoly::from_roots(roots, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i)
        v(i) = p.coeff(i + 1);
    return v;
}

// random pair of Schur a, b whose pseudo-polynomial a b* + b a* is strictly
// positive on the unit circle; the generative oracle for solver round trips
struct GenerativeInstance {
    RealPoly a, b;
    SigmaChoice sigma;
    double rho;
};

inline GenerativeInstance random_positive_pair(std::mt19937& rng, int n) {
    for (;;) {
        Eigen::VectorXd av = random_schur_vec(rng, n), bv = random_schur_vec(rng, n);
        std::vector<double> ac{1.0}, bc{1.0};
        for (int i = 0; i < n; ++i) {
            ac.push_back(av(i));
            bc.push_back(bv(i));
        }
        RealPoly a(ac), b(bc);
        try {
            auto [sigma, rho] = recover_sigma(a, b);
            // keep only comfortably interior instances
            double margin = 1e9;
            for (int i = 0; i < 256; ++i) {
                double th = 2.0 * 3.14159265358979323846 * i / 256;
                Complex z(std::cos(th), std::sin(th));
                Complex val = a(z) * b(1.0 / z) + b(z) * a(1.0 / z);
                margin = std::min(margin, val.real());
            }
            if (margin > 1e-4)
                return {a, b, sigma, rho};
        } catch (const DomainError&) {
        }
    }
}

// jet of f = rev_b / (2 rev_a) at z0 (test-side evaluation path)
inline Jet f_jet_of_pair(const RealPoly& a, const RealPoly& b, Complex z0, int order) {
    int n = a.degree();
    std::vector<double> ra(static_cast<size_t>(n) + 1), rb(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        ra[static_cast<size_t>(n - i)] = a.coeff(i);
        rb[static_cast<size_t>(n - i)] = b.coeff(i);
    }
    return RatFun::reduced(RealPoly(rb) * 0.5, RealPoly(ra), 1e-12).jet_at(z0, order);
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

} // namespace simstab::test
