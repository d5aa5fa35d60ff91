#pragma once

#include <vector>

#include "simstab/jet.hpp"
#include "simstab/problem.hpp"

namespace simstab {

/// Interpolation node in the open unit disc with its jet of order n_j.
struct InterpNode {
    Complex z;
    int order = 1;
    Jet w;
};

/// Record of the normalization applied to an interpolation problem:
/// domain automorphism z -> (z - alpha)/(1 - alpha z) and range scaling
/// by gamma > 0, plus the half-plane <-> disc map used for transport.
struct NormalizationTranscript {
    double alpha = 0.0;
    double gamma = 1.0;
    MobiusMap s_to_z = MobiusMap::disc_from_rhp();
};

/// Caratheodory interpolation data on the disc; conjugate-closed.
/// n = sum of node orders - 1 is the degree bound for the interpolant.
struct InterpProblem {
    std::vector<InterpNode> nodes;
    int n = 0;
    NormalizationTranscript transcript;
    bool normalized = false; ///< true once a real node sits at 0 with value 1/2
};

/// Square-root lift and disc transport of the R-constraints:
/// node z_j = (1-s_j)/(1+s_j), jet = compose(sqrt(R-jet), s=(1-z)/(1+z)).
/// Throws DomainError on branch failure, InfeasibleError for nodes on the
/// unit circle.
InterpProblem to_disc_problem(const StabilizationProblem& sp);

/// Move a real node to the origin and scale the range so its value is 1/2.
/// The anchor is the real node with the smallest z value (signed), matching
/// the transport order of the eta zeros. Throws InfeasibleError when no
/// real node exists.
InterpProblem normalize(const InterpProblem& ip);

struct PickResult {
    bool solvable = false;
    double min_eigenvalue = 0.0;
    double trace = 0.0;
};

/// Generalized Pick test for the Caratheodory class: builds the Hermitian
/// matrix of kernel derivatives (f(z)+conj(f(w)))/(1-z conj(w)) from the
/// jets and reports positive definiteness (min eigenvalue > 1e-10 * trace).
PickResult pick_test(const InterpProblem& ip);

} // namespace simstab
