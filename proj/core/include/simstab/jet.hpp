#pragma once

#include <complex>
#include <vector>

#include "simstab/mobius.hpp"

namespace simstab {

/// Truncated Taylor expansion of a function at a complex point:
/// coeffs[k] = f^(k)(center) / k!.  order == coeffs.size() >= 1.
struct Jet {
    std::complex<double> center{};
    std::vector<std::complex<double>> coeffs;

    Jet() = default;
    Jet(std::complex<double> c, std::vector<std::complex<double>> v)
        : center(c), coeffs(std::move(v)) {}

    int order() const { return static_cast<int>(coeffs.size()); }
    std::complex<double> value() const { return coeffs.front(); }

    /// True when every coefficient has |imag| <= tol.
    bool is_real(double tol = 1e-10) const;
};

Jet jet_add(const Jet& x, const Jet& y);
Jet jet_sub(const Jet& x, const Jet& y);
Jet jet_mul(const Jet& x, const Jet& y);          ///< truncated series product
Jet jet_div(const Jet& x, const Jet& y);          ///< series division, y.value() != 0
Jet jet_scale(const Jet& x, std::complex<double> s);
Jet jet_conj(const Jet& x);                        ///< jet of conj(f(conj(.))) at conj(center)

/// Principal square root lifted through the series: out * out == x and
/// Re(out.value()) > 0.  Throws DomainError when x.value() lies on the
/// nonpositive real axis (branch failure, i.e. condition (iii) fails there).
Jet jet_sqrt(const Jet& x);

/// Jet of t -> f(m(t)) at new_center, where x is the jet of f at
/// m(new_center).  Throws DomainError when m(new_center) != x.center.
Jet jet_compose_mobius(const Jet& x, const MobiusMap& m, std::complex<double> new_center);

/// Evaluate the truncated series at z (sum of coeffs[k] (z-center)^k).
std::complex<double> jet_eval(const Jet& x, std::complex<double> z);

} // namespace simstab
