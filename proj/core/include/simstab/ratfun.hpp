#pragma once

#include <string>

#include "simstab/jet.hpp"
#include "simstab/mobius.hpp"
#include "simstab/poly.hpp"

namespace simstab {

/// Reduced rational function num/den: numerator and denominator coprime
/// (no common root within the clustering tolerance), denominator monic.
class RatFun {
public:
    /// Reduce num/den: cancel root clusters matching within tol*(1+|root|),
    /// normalize to a monic denominator. Throws DomainError for a zero
    /// denominator.
    static RatFun reduced(const RealPoly& num, const RealPoly& den, double tol = 1e-9);
    static RatFun constant(double c);
    /// Build from factored form: gain * prod(s - zeros) / prod(s - poles).
    static RatFun from_factors(std::span<const Complex> zeros, std::span<const Complex> poles,
                               double gain = 1.0, double tol = 1e-9);

    RatFun() : num_(RealPoly::constant(0.0)), den_(RealPoly::constant(1.0)) {}

    const RealPoly& num() const { return num_; }
    const RealPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    double operator()(double s) const { return num_(s) / den_(s); }
    Complex operator()(Complex s) const { return num_(s) / den_(s); }

    /// Jet of the function at s0 via series division of the Taylor
    /// expansions. Throws DomainError when s0 is a pole.
    Jet jet_at(Complex s0, int order) const;

    bool is_proper() const { return num_.degree() <= den_.degree(); }
    /// num.degree() == den.degree() exactly.
    bool is_biproper() const { return num_.degree() == den_.degree(); }
    /// Limit at s -> infinity: 0 when strictly proper, leading-coefficient
    /// ratio when biproper. Throws DomainError when improper.
    double value_at_infinity() const;
    /// deg den - deg num (negative when improper).
    int relative_degree() const { return den_.degree() - num_.degree(); }

    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun operator*(double c) const;

    std::string to_string(const std::string& var = "s") const;

private:
    RatFun(RealPoly num, RealPoly den) : num_(std::move(num)), den_(std::move(den)) {}
    RealPoly num_, den_;
};

/// rat_reduce of the spec: free-function spelling of RatFun::reduced.
inline RatFun rat_reduce(const RealPoly& num, const RealPoly& den, double tol = 1e-9) {
    return RatFun::reduced(num, den, tol);
}

struct HMembership {
    bool in_H = false;
    std::string reason; ///< empty when in_H
};

/// Membership in H: proper with all poles in the open left half plane.
HMembership membership_H(const RatFun& r);

/// r composed with the Mobius map m, as a reduced rational function.
RatFun mobius_substitute(const RatFun& r, const MobiusMap& m, double tol = 1e-9);

} // namespace simstab
