#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "simstab/config.hpp"
#include "simstab/report.hpp"

namespace simstab {

/// CLI exit codes: the full contract of every command.
enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitInfeasible = 2,
    kExitSolverFailure = 3,
};

struct CommandOptions {
    std::string out_dir = ".";
    bool write_json = true;
    bool write_csv = true;
    bool write_svg = false;
    bool json_stdout = false; ///< print the JSON report instead of text
    std::optional<std::string> sigma_spec;   ///< "zero" | "z0,z1,.." | "coeffs:1,..."
    std::optional<std::string> lambda_grid;  ///< overrides the config grid
};

struct CommandResult {
    int exit_code = kExitOk;
    RunReport report;
    std::vector<std::string> written_files;
};

/// analyze: eta zeros, m_inf, constraints, Pick verdict. No solving.
CommandResult cmd_analyze(const PlantConfig& cfg, const CommandOptions& opt, std::ostream& out);

/// synthesize: full pipeline, writes report.json / poles.csv / poles.svg.
CommandResult cmd_synthesize(const PlantConfig& cfg, const CommandOptions& opt, std::ostream& out);

/// sweep: one synthesis per sigma zero, plus a combined pole table.
CommandResult cmd_sweep(const PlantConfig& cfg, const std::vector<double>& sigma_zeros,
                        const CommandOptions& opt, std::ostream& out);

/// verify: closed-loop check of an externally supplied compensator.
CommandResult cmd_verify(const PlantConfig& cfg, const RatFun& k, const CommandOptions& opt,
                         std::ostream& out);

} // namespace simstab
