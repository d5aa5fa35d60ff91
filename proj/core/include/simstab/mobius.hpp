#pragma once

#include <complex>

#include "simstab/errors.hpp"

namespace simstab {

/// Fractional linear map s -> (a s + b) / (c s + d) with real parameters
/// and nonzero determinant a d - b c.
struct MobiusMap {
    double a, b, c, d;

    MobiusMap(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        if (det() == 0.0)
            throw DomainError("MobiusMap: singular parameter matrix (ad - bc = 0)");
    }

    double det() const { return a * d - b * c; }

    std::complex<double> operator()(std::complex<double> s) const {
        return (a * s + b) / (c * s + d);
    }

    std::complex<double> derivative(std::complex<double> s) const {
        auto q = c * s + d;
        return det() / (q * q);
    }

    MobiusMap inverse() const { return MobiusMap(d, -b, -c, a); }

    /// z = (1 - s)/(1 + s): open RHP onto the open unit disc (an involution).
    static MobiusMap disc_from_rhp() { return MobiusMap(-1.0, 1.0, 1.0, 1.0); }
    /// s = (1 - z)/(1 + z): same involution, read in the other direction.
    static MobiusMap rhp_from_disc() { return disc_from_rhp(); }
    /// z = (1 + s)/(1 - s): pole-plotting map (left half plane to unit disc).
    static MobiusMap pole_plot_map() { return MobiusMap(1.0, 1.0, -1.0, 1.0); }
    /// z -> (z - alpha)/(1 - alpha z), alpha real in (-1, 1).
    static MobiusMap disc_automorphism(double alpha) {
        return MobiusMap(1.0, -alpha, -alpha, 1.0);
    }
};

} // namespace simstab
