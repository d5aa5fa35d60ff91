#pragma once

#include <optional>
#include <vector>

#include "simstab/ratfun.hpp"

namespace simstab {

/// Two distinct plants p0 = x0/y0, p1 = x1/y1 given by coprime
/// factorizations over H.
struct PlantPair {
    RatFun x0, y0, x1, y1;
};

/// Validate the PlantPair invariants: each factor in H, the pair
/// factorizations coprime in the closed RHP, plants distinct.
/// Throws InputError on violation.
PlantPair make_plant_pair(RatFun x0, RatFun y0, RatFun x1, RatFun y1);

/// eta = x0 y1 - x1 y0 with its closed-RHP zero structure.
struct EtaAnalysis {
    RatFun eta;
    std::vector<RootCluster> rhp_zeros;      ///< Re > 0, sorted by descending real part
    std::vector<RootCluster> boundary_zeros; ///< |Re| below the boundary tolerance
    int m_infinity = 0;                      ///< relative degree of eta
};

/// Compute eta and its RHP zeros. Throws InputError when eta is identically
/// zero (identical plants) and InfeasibleError when eta vanishes on the
/// imaginary axis (boundary interpolation is unsupported).
EtaAnalysis compute_eta(const PlantPair& p, double reduce_tol = 1e-9);

/// Multiplicity of the zero of eta at infinity (relative degree of the
/// reduced eta).
int infinity_multiplicity(const PlantPair& p, double reduce_tol = 1e-9);

enum class RatioSource { YRatio, XRatio };

/// Interpolation constraint on R = Delta1/Delta0 at a finite node:
/// the order-m jet of R at s_j must equal `target`.
struct RConstraint {
    Complex node;
    int order = 1;
    Jet target;
    RatioSource source = RatioSource::YRatio;
};

struct InfinityCondition {
    bool required = false;
    int multiplicity = 0;
    double target_value = 0.0; ///< (x1/x0)(inf)
};

struct StabilizationProblem {
    PlantPair plants;
    EtaAnalysis analysis;
    std::vector<RConstraint> constraints;
    InfinityCondition infinity_condition;
};

/// Build the R-constraints: at each RHP zero s_j of eta the target is the
/// order-m_j jet of y1/y0 (of x1/x0 when y0 vanishes at s_j). Throws
/// InfeasibleError when both ratios are undefined at a node or a target
/// value lies on the nonpositive real axis (condition (iii) violated).
StabilizationProblem build_constraints(const PlantPair& p, const EtaAnalysis& a);

/// compute_eta followed by build_constraints.
StabilizationProblem analyze_plants(const PlantPair& p, double reduce_tol = 1e-9);

} // namespace simstab
