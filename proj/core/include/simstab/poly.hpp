#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace simstab {

using Complex = std::complex<double>;

/// Real-coefficient polynomial, coefficients stored highest degree first.
/// A nonzero polynomial has a nonzero leading coefficient; the zero
/// polynomial is stored as the single coefficient 0.
class RealPoly {
public:
    RealPoly() : coeffs_{0.0} {}
    explicit RealPoly(std::vector<double> coeffs);

    static RealPoly constant(double c) { return RealPoly({c}); }
    /// Monic polynomial with the given roots (conjugate-closed input),
    /// scaled by `lead`. Imaginary residue from pair multiplication is dropped.
    static RealPoly from_roots(std::span<const Complex> roots, double lead = 1.0);

    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double leading() const { return coeffs_.front(); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int k) const { return coeffs_[static_cast<size_t>(k)]; }

    double operator()(double x) const;
    Complex operator()(Complex x) const;

    RealPoly derivative() const;
    /// Taylor coefficients about `center`, low order first, `order` terms.
    std::vector<Complex> taylor(Complex center, int order) const;

    /// Largest coefficient magnitude (0 for the zero polynomial).
    double coeff_scale() const;
    /// Copy with leading coefficients below rel_tol * coeff_scale() removed.
    RealPoly trimmed(double rel_tol) const;

    RealPoly operator+(const RealPoly& o) const;
    RealPoly operator-(const RealPoly& o) const;
    RealPoly operator*(const RealPoly& o) const;
    RealPoly operator*(double s) const;
    RealPoly operator-() const { return *this * -1.0; }

    bool operator==(const RealPoly& o) const { return coeffs_ == o.coeffs_; }

    std::string to_string(const std::string& var = "s") const;

private:
    std::vector<double> coeffs_;
};

/// A root with its clustered multiplicity.
struct RootCluster {
    Complex root;
    int multiplicity = 1;
};

struct RootFindOptions {
    double tol = 1e-12;          ///< residual tolerance relative to coefficient scale
    int max_iterations = 200;
    double cluster_radius = 1e-6; ///< scaled by (1 + |root|)
};

/// All roots of p with multiplicities (Aberth-Ehrlich iteration plus
/// clustering). Conjugate closure is enforced for the real input.
/// Throws DomainError for the zero polynomial, SolverError on
/// non-convergence (message carries the best residual).
std::vector<RootCluster> poly_roots(const RealPoly& p, const RootFindOptions& opts);
std::vector<RootCluster> poly_roots(const RealPoly& p, double tol = 1e-12);

/// Degree of the approximate GCD of (p, q): number of matching root
/// clusters. Used to cross-check multiplicity detection.
int approx_gcd_degree(const RealPoly& p, const RealPoly& q, double cluster_radius = 1e-6);

enum class StabilityRegion {
    OpenLeftHalfPlane, ///< Hurwitz
    OpenUnitDisc,      ///< Schur
};

struct StabilityResult {
    bool stable = false;
    std::vector<Complex> witnesses; ///< roots violating the region when unstable
};

/// Every root strictly inside the region with distance > margin from the
/// boundary. Witness roots reported otherwise.
StabilityResult stability_test(const RealPoly& p, StabilityRegion region, double margin = 0.0);

} // namespace simstab
