#pragma once

#include <span>
#include <vector>

#include "simstab/cee.hpp"
#include "simstab/problem.hpp"

namespace simstab {

/// Interpolant lifted back to the s-domain: F(s) and R(s) = F(s)^2.
struct LiftedInterpolant {
    RatFun F;
    RatFun R;
};

/// Denormalize f through the transcript and substitute s = (1-z)/(1+z).
/// When `check` is nonempty, the jets of R at the original nodes are
/// validated against the constraint targets (throws SolverError naming the
/// worst node above tolerance).
LiftedInterpolant denormalize_and_lift(const CeeSolution& sol, const NormalizationTranscript& t,
                                       std::span<const RConstraint> check = {},
                                       double tol = 1e-7);

/// Compensator k = (y1 - R y0) / (R x0 - x1) with R = Delta1/Delta0.
struct Compensator {
    RatFun R, F, k;
    bool k_proper = true;
    double properness_defect = 0.0; ///< deg num - deg den of k when improper
};

/// When `analysis` is given, the cancellation of eta's RHP zeros in both
/// combinations is verified (condition (i) realized); imperfect
/// cancellation above 1e-6 raises SolverError.
Compensator make_compensator(const PlantPair& p, const LiftedInterpolant& lift,
                             const EtaAnalysis* analysis = nullptr);

struct ConditionIIIReport {
    bool pass = false;
    double margin = 0.0;       ///< min distance of sampled R values to (-inf, 0]
    bool grid_shifted = false; ///< a sample hit a pole and was nudged
};

/// Sample R on the imaginary axis (log-spaced), a large semicircle and a
/// coarse interior RHP grid; report the distance of the value set to the
/// nonpositive real axis.
ConditionIIIReport condition_iii_check(const RatFun& R);

/// Closed-loop facts for one lambda.
struct LambdaRow {
    double lambda = 0.0;
    RealPoly characteristic;
    std::vector<Complex> poles_s;
    std::vector<Complex> poles_z; ///< pole images under z = (1+s)/(1-s)
    bool stable = false;
    double properness = 1.0; ///< 1 + k(inf) p_lambda(inf)
};

struct ClosedLoopReport {
    std::vector<LambdaRow> rows;
    bool all_stable = false;
    bool properness_ok = false; ///< every |properness| > tolerance
    bool overall_pass = false;  ///< all_stable && properness_ok
};

/// For each lambda: build p_lambda, the closed-loop characteristic
/// polynomial from polynomial coprime fractions of p_lambda and k, its
/// roots, the disc-mapped poles, the stability verdict, and the properness
/// value 1 + k(inf) p_lambda(inf).
ClosedLoopReport closed_loop(const PlantPair& p, const RatFun& k,
                             std::span<const double> lambda_grid,
                             double stability_margin = 1e-9,
                             double properness_tol = 1e-6);

/// Default grid 0, 0.1, ..., 1.0.
std::vector<double> default_lambda_grid();

} // namespace simstab
