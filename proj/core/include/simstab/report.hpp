#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simstab/cee.hpp"
#include "simstab/interp.hpp"
#include "simstab/problem.hpp"
#include "simstab/synth.hpp"

namespace simstab {

/// Everything a pipeline run produced; sections are optional so the same
/// report type serves analyze, synthesize and verify.
struct RunReport {
    // problem summary
    std::vector<RootCluster> eta_zeros;
    int m_infinity = 0;
    InfinityCondition infinity_condition;
    std::vector<RConstraint> constraints;

    // solvability
    std::optional<PickResult> pick;

    // solution
    std::optional<CeeSolution> solution;
    std::optional<double> sigma_zero; ///< sweep key when applicable

    // compensator & closed loop
    std::optional<Compensator> compensator;
    std::optional<ConditionIIIReport> condition_iii;
    std::optional<ClosedLoopReport> closed_loop;

    std::vector<std::string> warnings;
};

/// Deterministic JSON document (sorted keys, shortest round-trip floats).
std::string report_to_json(const RunReport& r);

/// Pole table `lambda,re_s,im_s,re_z,im_z`, rows sorted by
/// (lambda, re_s, im_s), floats printed with 17 significant digits.
std::string report_to_csv(const RunReport& r);

/// Combined sweep table `sigma_zero,lambda,re_s,im_s,re_z,im_z`.
std::string sweep_to_csv(const std::vector<RunReport>& runs);

/// 1000x1000 scatter of the disc-mapped closed-loop poles with the unit
/// circle drawn at radius 400 px.
std::string report_to_svg(const RunReport& r);

/// Human-readable summary (used by the CLI on stdout).
std::string report_to_text(const RunReport& r);

/// Printf-style %.17g formatting used by the CSV/SVG writers.
std::string format_double(double v);

} // namespace simstab
