#pragma once

#include <Eigen/Dense>
#include <utility>

#include "simstab/interp.hpp"
#include "simstab/ratfun.hpp"

namespace simstab {

/// Monic Schur polynomial sigma(z) = z^n + sigma_1 z^{n-1} + ... + sigma_n
/// parameterizing the solution family.
struct SigmaChoice {
    RealPoly sigma;

    /// Validates monicity and Schur stability.
    static SigmaChoice from_poly(RealPoly p);
    static SigmaChoice from_vector(const Eigen::VectorXd& v); ///< [sigma_1..sigma_n]
    /// (z - zero)^n; |zero| must be < 1.
    static SigmaChoice from_zero(double zero, int n);
    /// Default choice z^n.
    static SigmaChoice power_of_z(int n);

    int degree() const { return sigma.degree(); }
    Eigen::VectorXd vec() const; ///< [sigma_1..sigma_n]
};

/// Residual diagnostics attached to a solution.
struct SolveDiagnostics {
    double spectral_residual = 0.0;      ///< a b* + b a* - 2 rho^2 sigma sigma*
    double interpolation_residual = 0.0; ///< worst jet mismatch of f at the nodes
    double cee_residual = 0.0;           ///< fixed-point residual of the CEE
    double are_residual = 0.0;           ///< algebraic Riccati equation residual
    double positivity_margin = 0.0;      ///< min Re f on the 0.999-radius circle
    double spectral_factor_error = 0.0;  ///< |v v* - Phi| max on the circle grid
};

/// Solution of the Covariance Extension Equation for a given sigma:
/// P >= 0 with h'Ph < 1, monic Schur a, b, rho = sqrt(1 - h'Ph).
struct CeeSolution {
    Eigen::MatrixXd P;
    RealPoly a, b;
    double rho = 1.0;
    SigmaChoice sigma;
    int rank_P = 0; ///< singular values above 1e-8 * ||P||
    SolveDiagnostics residuals;
};

/// Origin-type data: expansion coefficients c_1..c_n of phi_+ at a single
/// node z = 0 of multiplicity n+1. Builds u = (I+C)^{-1} c and
/// U = (I+C)^{-1} C with C the strictly lower triangular Toeplitz matrix
/// whose k-th subdiagonal is c_k.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> build_uU_origin(const Eigen::VectorXd& c);

/// Solve the CEE P = Gamma (P - P h h' P) Gamma' + g(P) g(P)' for
/// origin-type data by damped fixed-point iteration with a Newton finish,
/// and assemble (a, b, rho).
CeeSolution cee_solve_origin(const Eigen::VectorXd& c, const SigmaChoice& sigma);

/// General solver: Newton iteration with homotopy continuation on the jet
/// data for the square system {spectral identity, interpolation
/// conditions}; recovers P from the Lyapunov-structured relation.
/// Requires a normalized problem (node 0 with value 1/2).
CeeSolution solve_general(const InterpProblem& ip, const SigmaChoice& sigma);

/// f(z) = rev_b(z) / (2 rev_a(z)); f(0) = 1/2 by monicity.
RatFun assemble_f(const CeeSolution& sol);

/// Recompute every identity of the solution against the interpolation data.
SolveDiagnostics verify_solution(const CeeSolution& sol, const InterpProblem& ip);

/// Spectral factorization of a(z) b(1/z) + b(z) a(1/z) = 2 rho^2 sigma(z)
/// sigma(1/z): recovers the unique Schur monic sigma and rho > 0. Throws
/// DomainError when the pseudo-polynomial is not positive on the circle.
std::pair<SigmaChoice, double> recover_sigma(const RealPoly& a, const RealPoly& b);

} // namespace simstab
