#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simstab/commands.hpp"
#include "simstab/errors.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    simstab::CommandOptions opt;
    std::optional<double> tol_reduce, tol_roots, tol_solver, tol_properness, tol_stability;
    std::optional<std::string> lambda_grid;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_outputs) {
    cmd->add_option("config", args.config_path, "plant-family config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--lambda-grid", args.lambda_grid,
                    "lambda grid: comma list or start:step:end (default 0:0.1:1)");
    cmd->add_option("--tol-reduce", args.tol_reduce, "coprimality / approximate-GCD tolerance");
    cmd->add_option("--tol-roots", args.tol_roots, "root-finder residual tolerance");
    cmd->add_option("--tol-solver", args.tol_solver, "Newton residual tolerance");
    cmd->add_option("--tol-properness", args.tol_properness,
                    "closed-loop properness threshold on |1 + k(inf) p(inf)|");
    cmd->add_option("--tol-stability", args.tol_stability, "stability margin on |z|");
    cmd->add_flag("--json", args.opt.json_stdout, "print the JSON report on stdout");
    if (with_outputs) {
        cmd->add_option("--out", args.opt.out_dir, "output directory (default .)");
        cmd->add_flag("--svg", args.opt.write_svg, "also write an SVG pole scatter");
        cmd->add_flag("!--no-json", args.opt.write_json, "skip writing report.json");
        cmd->add_flag("!--no-csv", args.opt.write_csv, "skip writing the pole CSV");
    } else {
        args.opt.write_json = false;
        args.opt.write_csv = false;
    }
}

simstab::PlantConfig load_with_overrides(const CommonArgs& args) {
    simstab::PlantConfig cfg = simstab::load_config(args.config_path);
    if (args.tol_reduce)
        cfg.tol.reduce = *args.tol_reduce;
    if (args.tol_roots)
        cfg.tol.roots = *args.tol_roots;
    if (args.tol_solver)
        cfg.tol.solver = *args.tol_solver;
    if (args.tol_properness)
        cfg.tol.properness = *args.tol_properness;
    if (args.tol_stability)
        cfg.tol.stability = *args.tol_stability;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simstab: simultaneous stabilization of a one-parameter plant family via "
                 "derivative-constrained analytic interpolation"};
    app.require_subcommand(1);

    CommonArgs a_analyze, a_synth, a_sweep, a_verify;
    std::optional<std::string> sigma_spec;
    std::string sigma_zeros_spec;
    std::string k_path;

    auto* analyze = app.add_subcommand("analyze", "problem analysis and solvability test");
    add_common(analyze, a_analyze, false);

    auto* synth = app.add_subcommand("synthesize", "solve and emit compensator + reports");
    add_common(synth, a_synth, true);
    synth->add_option("--sigma", sigma_spec,
                      "sigma spec: zero list 'z0[,z1,..]' or 'coeffs:1,c1,..' (default z^n)");

    auto* sweep = app.add_subcommand("sweep", "one synthesis per sigma zero");
    add_common(sweep, a_sweep, true);
    sweep->add_option("--sigma-zeros", sigma_zeros_spec, "comma-separated sigma zeros")
        ->required();

    auto* verify = app.add_subcommand("verify", "closed-loop check of a given compensator");
    add_common(verify, a_verify, true);
    verify->add_option("--k", k_path, "compensator file (JSON rational function)")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : simstab::kExitInputError;
    }

    try {
        if (*analyze) {
            a_analyze.opt.lambda_grid = a_analyze.lambda_grid;
            auto cfg = load_with_overrides(a_analyze);
            return simstab::cmd_analyze(cfg, a_analyze.opt, std::cout).exit_code;
        }
        if (*synth) {
            a_synth.opt.lambda_grid = a_synth.lambda_grid;
            a_synth.opt.sigma_spec = sigma_spec;
            auto cfg = load_with_overrides(a_synth);
            return simstab::cmd_synthesize(cfg, a_synth.opt, std::cout).exit_code;
        }
        if (*sweep) {
            a_sweep.opt.lambda_grid = a_sweep.lambda_grid;
            auto cfg = load_with_overrides(a_sweep);
            std::vector<double> zeros;
            std::stringstream ss(sigma_zeros_spec);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty())
                    zeros.push_back(std::stod(tok));
            if (zeros.empty()) {
                std::cout << "error: --sigma-zeros is empty\n";
                return simstab::kExitInputError;
            }
            return simstab::cmd_sweep(cfg, zeros, a_sweep.opt, std::cout).exit_code;
        }
        if (*verify) {
            a_verify.opt.lambda_grid = a_verify.lambda_grid;
            auto cfg = load_with_overrides(a_verify);
            simstab::RatFun k = simstab::parse_ratfun_file(k_path, cfg.tol.reduce);
            return simstab::cmd_verify(cfg, k, a_verify.opt, std::cout).exit_code;
        }
    } catch (const simstab::InputError& e) {
        std::cout << "error: " << e.what() << "\n";
        return simstab::kExitInputError;
    } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << "\n";
        return simstab::kExitSolverFailure;
    }
    return simstab::kExitInputError;
}
