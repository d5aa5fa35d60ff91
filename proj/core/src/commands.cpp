#include "simstab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "simstab/errors.hpp"
#include "simstab/synth.hpp"

namespace simstab {

namespace {

namespace fs = std::filesystem;

int map_exception(const std::exception& e, std::ostream& out) {
    out << "error: " << e.what() << "\n";
    if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const DomainError*>(&e))
        return kExitInputError;
    if (dynamic_cast<const InfeasibleError*>(&e))
        return kExitInfeasible;
    return kExitSolverFailure; // SolverError and anything unexpected
}

void write_file(const std::string& dir, const std::string& name, const std::string& contents,
                std::vector<std::string>& written) {
    fs::create_directories(dir);
    fs::path p = fs::path(dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw InputError("cannot write output file " + p.string());
    out << contents;
    written.push_back(p.string());
}

std::vector<double> effective_lambda_grid(const PlantConfig& cfg, const CommandOptions& opt) {
    if (opt.lambda_grid)
        return parse_lambda_grid(*opt.lambda_grid);
    if (!cfg.lambda_grid.empty())
        return cfg.lambda_grid;
    return default_lambda_grid();
}

SigmaChoice resolve_sigma(const PlantConfig& cfg, const CommandOptions& opt, int n) {
    if (opt.sigma_spec) {
        const std::string& s = *opt.sigma_spec;
        if (s.rfind("coeffs:", 0) == 0) {
            std::vector<double> c;
            std::stringstream ss(s.substr(7));
            std::string tok;
            while (std::getline(ss, tok, ','))
                c.push_back(std::stod(tok));
            RealPoly p(std::move(c));
            if (p.degree() != n) {
                std::ostringstream os;
                os << "sigma degree " << p.degree() << " does not match the required degree n = "
                   << n;
                throw InputError(os.str());
            }
            return SigmaChoice::from_poly(std::move(p));
        }
        // comma-separated zero list, or a single zero
        std::vector<Complex> roots;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ','))
            roots.emplace_back(std::stod(tok), 0.0);
        if (roots.size() == 1 && n != 1)
            return SigmaChoice::from_zero(roots[0].real(), n);
        if (static_cast<int>(roots.size()) != n) {
            std::ostringstream os;
            os << "sigma has " << roots.size() << " zeros but the required degree is n = " << n;
            throw InputError(os.str());
        }
        return SigmaChoice::from_poly(RealPoly::from_roots(roots, 1.0));
    }
    if (cfg.sigma) {
        if (cfg.sigma->degree() != n) {
            std::ostringstream os;
            os << "config sigma degree " << cfg.sigma->degree()
               << " does not match the required degree n = " << n;
            throw InputError(os.str());
        }
        return SigmaChoice::from_poly(*cfg.sigma);
    }
    if (cfg.sigma_zero)
        return SigmaChoice::from_zero(*cfg.sigma_zero, n);
    return SigmaChoice::power_of_z(n); // default: all sigma zeros at the origin
}

struct Pipeline {
    StabilizationProblem problem;
    InterpProblem disc;
    InterpProblem normalized;
    PickResult pick;
};

Pipeline run_analysis(const PlantConfig& cfg) {
    Pipeline pl;
    pl.problem = analyze_plants(cfg.plants, cfg.tol.reduce);
    pl.disc = to_disc_problem(pl.problem);
    pl.normalized = normalize(pl.disc);
    pl.pick = pick_test(pl.normalized);
    return pl;
}

void fill_problem_section(RunReport& rep, const Pipeline& pl) {
    rep.eta_zeros = pl.problem.analysis.rhp_zeros;
    rep.m_infinity = pl.problem.analysis.m_infinity;
    rep.infinity_condition = pl.problem.infinity_condition;
    rep.constraints = pl.problem.constraints;
    rep.pick = pl.pick;
}

RunReport synthesize_one(const PlantConfig& cfg, const Pipeline& pl, const SigmaChoice& sigma,
                         const std::vector<double>& grid) {
    RunReport rep;
    fill_problem_section(rep, pl);

    CeeSolution sol = solve_general(pl.normalized, sigma);
    LiftedInterpolant lift =
        denormalize_and_lift(sol, pl.normalized.transcript, pl.problem.constraints);
    Compensator comp = make_compensator(cfg.plants, lift, &pl.problem.analysis);
    rep.solution = sol;
    rep.compensator = comp;
    rep.condition_iii = condition_iii_check(lift.R);
    rep.closed_loop =
        closed_loop(cfg.plants, comp.k, grid, cfg.tol.stability, cfg.tol.properness);

    if (pl.problem.infinity_condition.required) {
        double r_inf = lift.R.is_biproper() ? lift.R.value_at_infinity()
                                            : (lift.R.is_proper() ? 0.0 : 1e300);
        double target = pl.problem.infinity_condition.target_value;
        if (std::abs(r_inf - target) > 1e-6 * (1.0 + std::abs(target))) {
            std::ostringstream os;
            os << "infinity-condition discrepancy: m_infinity = "
               << pl.problem.infinity_condition.multiplicity << " requires R(inf) = "
               << format_double(target) << " but the synthesized R(inf) = "
               << format_double(r_inf)
               << "; condition (ii) is reported, not enforced, and the closed loop is "
                  "improper in the limit";
            rep.warnings.push_back(os.str());
        }
    }
    if (!rep.closed_loop->properness_ok)
        rep.warnings.push_back(
            "closed-loop properness value 1 + k(inf) p_lambda(inf) is within tolerance of 0 "
            "for some lambda");
    if (!comp.k_proper)
        rep.warnings.push_back("compensator k is improper");
    return rep;
}

} // namespace

CommandResult cmd_analyze(const PlantConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    CommandResult res;
    try {
        Pipeline pl = run_analysis(cfg);
        fill_problem_section(res.report, pl);
        out << (opt.json_stdout ? report_to_json(res.report) : report_to_text(res.report));
        res.exit_code = pl.pick.solvable ? kExitOk : kExitInfeasible;
        if (!pl.pick.solvable)
            out << "problem is infeasible (Pick matrix not positive definite)\n";
    } catch (const std::exception& e) {
        res.exit_code = map_exception(e, out);
    }
    return res;
}

CommandResult cmd_synthesize(const PlantConfig& cfg, const CommandOptions& opt,
                             std::ostream& out) {
    CommandResult res;
    try {
        Pipeline pl = run_analysis(cfg);
        if (!pl.pick.solvable) {
            fill_problem_section(res.report, pl);
            out << "problem is infeasible (Pick matrix min eigenvalue "
                << format_double(pl.pick.min_eigenvalue) << ")\n";
            res.exit_code = kExitInfeasible;
            return res;
        }
        SigmaChoice sigma = resolve_sigma(cfg, opt, pl.normalized.n);
        auto grid = effective_lambda_grid(cfg, opt);
        res.report = synthesize_one(cfg, pl, sigma, grid);
        out << (opt.json_stdout ? report_to_json(res.report) : report_to_text(res.report));
        if (opt.write_json)
            write_file(opt.out_dir, "report.json", report_to_json(res.report), res.written_files);
        if (opt.write_csv)
            write_file(opt.out_dir, "poles.csv", report_to_csv(res.report), res.written_files);
        if (opt.write_svg)
            write_file(opt.out_dir, "poles.svg", report_to_svg(res.report), res.written_files);
        res.exit_code = kExitOk;
    } catch (const std::exception& e) {
        res.exit_code = map_exception(e, out);
    }
    return res;
}

CommandResult cmd_sweep(const PlantConfig& cfg, const std::vector<double>& sigma_zeros,
                        const CommandOptions& opt, std::ostream& out) {
    CommandResult res;
    try {
        Pipeline pl = run_analysis(cfg);
        if (!pl.pick.solvable) {
            fill_problem_section(res.report, pl);
            out << "problem is infeasible (Pick matrix not positive definite)\n";
            res.exit_code = kExitInfeasible;
            return res;
        }
        auto grid = effective_lambda_grid(cfg, opt);

        std::vector<double> accepted;
        for (double z0 : sigma_zeros) {
            if (std::abs(z0) >= 1.0) {
                std::ostringstream os;
                os << "sigma zero " << format_double(z0) << " skipped: not Schur (|z0| >= 1)";
                res.report.warnings.push_back(os.str());
                out << "warning: " << os.str() << "\n";
                continue;
            }
            accepted.push_back(z0);
        }

        // independent solver instances; results collected in input order
        std::vector<std::future<RunReport>> futures;
        for (double z0 : accepted)
            futures.push_back(std::async(std::launch::async, [&, z0] {
                RunReport r =
                    synthesize_one(cfg, pl, SigmaChoice::from_zero(z0, pl.normalized.n), grid);
                r.sigma_zero = z0;
                return r;
            }));
        std::vector<RunReport> runs;
        for (auto& f : futures)
            runs.push_back(f.get());

        // distinct sigma must give distinct (a, b)
        for (size_t i = 0; i < runs.size(); ++i)
            for (size_t j = i + 1; j < runs.size(); ++j) {
                const auto& A = runs[i].solution;
                const auto& B = runs[j].solution;
                double dist = 0.0;
                for (int m = 1; m <= A->a.degree(); ++m) {
                    dist = std::max(dist, std::abs(A->a.coeff(m) - B->a.coeff(m)));
                    dist = std::max(dist, std::abs(A->b.coeff(m) - B->b.coeff(m)));
                }
                if (dist <= 1e-6) {
                    std::ostringstream os;
                    os << "sigma zeros " << format_double(accepted[i]) << " and "
                       << format_double(accepted[j]) << " produced coincident solutions";
                    res.report.warnings.push_back(os.str());
                }
            }

        bool all_stable = true;
        for (const auto& r : runs)
            all_stable = all_stable && r.closed_loop && r.closed_loop->all_stable;

        fill_problem_section(res.report, pl);
        for (auto& r : runs) {
            for (const auto& w : r.warnings)
                res.report.warnings.push_back("sigma_zero " + format_double(*r.sigma_zero) +
                                              ": " + w);
            std::ostringstream os;
            os << "sigma zero " << format_double(*r.sigma_zero) << ": "
               << (r.closed_loop->all_stable ? "stable" : "UNSTABLE") << " across the grid, a = "
               << r.solution->a.to_string("z") << ", rho = " << format_double(r.solution->rho);
            out << os.str() << "\n";
        }

        if (opt.write_json)
            for (const auto& r : runs) {
                std::ostringstream name;
                name << "report_sigma_" << format_double(*r.sigma_zero) << ".json";
                write_file(opt.out_dir, name.str(), report_to_json(r), res.written_files);
            }
        if (opt.write_csv)
            write_file(opt.out_dir, "sweep_poles.csv", sweep_to_csv(runs), res.written_files);

        res.exit_code = all_stable ? kExitOk : kExitSolverFailure;
        if (!all_stable)
            out << "error: a sweep design failed the closed-loop check\n";
    } catch (const std::exception& e) {
        res.exit_code = map_exception(e, out);
    }
    return res;
}

CommandResult cmd_verify(const PlantConfig& cfg, const RatFun& k, const CommandOptions& opt,
                         std::ostream& out) {
    CommandResult res;
    try {
        auto grid = effective_lambda_grid(cfg, opt);
        res.report.closed_loop =
            closed_loop(cfg.plants, k, grid, cfg.tol.stability, cfg.tol.properness);
        if (!k.is_proper())
            res.report.warnings.push_back("supplied compensator is improper");
        Compensator comp;
        comp.k = k;
        comp.k_proper = k.is_proper();
        comp.properness_defect = comp.k_proper ? 0.0 : -k.relative_degree();
        res.report.compensator = comp;
        out << (opt.json_stdout ? report_to_json(res.report) : report_to_text(res.report));
        if (opt.write_json)
            write_file(opt.out_dir, "verify.json", report_to_json(res.report), res.written_files);
        if (opt.write_csv)
            write_file(opt.out_dir, "verify_poles.csv", report_to_csv(res.report),
                       res.written_files);
        res.exit_code = kExitOk;
    } catch (const std::exception& e) {
        res.exit_code = map_exception(e, out);
    }
    return res;
}

} // namespace simstab
