#include "simstab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace simstab {

namespace {

using nlohmann::json;

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json poly_json(const RealPoly& p) {
    json a = json::array();
    for (double c : p.coeffs())
        a.push_back(c);
    return a;
}

json clusters_json(const std::vector<RootCluster>& cs) {
    json a = json::array();
    for (const auto& c : cs)
        a.push_back(json{{"re", c.root.real()}, {"im", c.root.imag()}, {"multiplicity", c.multiplicity}});
    return a;
}

json jet_json(const Jet& j) {
    json a = json::array();
    for (auto c : j.coeffs)
        a.push_back(complex_json(c));
    return a;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string report_to_json(const RunReport& r) {
    json j;
    j["schema"] = "simstab-report-v1";

    json prob;
    prob["eta_zeros"] = clusters_json(r.eta_zeros);
    prob["m_infinity"] = r.m_infinity;
    prob["infinity_condition"] = json{{"required", r.infinity_condition.required},
                                      {"multiplicity", r.infinity_condition.multiplicity},
                                      {"target_value", r.infinity_condition.target_value}};
    json cons = json::array();
    for (const auto& rc : r.constraints)
        cons.push_back(json{{"node", complex_json(rc.node)},
                            {"order", rc.order},
                            {"source", rc.source == RatioSource::YRatio ? "y-ratio" : "x-ratio"},
                            {"target_jet", jet_json(rc.target)}});
    prob["constraints"] = cons;
    j["problem"] = prob;

    if (r.pick)
        j["solvability"] = json{{"solvable", r.pick->solvable},
                                {"min_eigenvalue", r.pick->min_eigenvalue},
                                {"trace", r.pick->trace}};

    if (r.solution) {
        const auto& s = *r.solution;
        json P = json::array();
        for (int i = 0; i < s.P.rows(); ++i) {
            json row = json::array();
            for (int k = 0; k < s.P.cols(); ++k)
                row.push_back(s.P(i, k));
            P.push_back(row);
        }
        j["solution"] = json{{"a", poly_json(s.a)},
                             {"b", poly_json(s.b)},
                             {"rho", s.rho},
                             {"sigma", poly_json(s.sigma.sigma)},
                             {"rank_P", s.rank_P},
                             {"P", P},
                             {"residuals",
                              json{{"spectral", s.residuals.spectral_residual},
                                   {"interpolation", s.residuals.interpolation_residual},
                                   {"cee", s.residuals.cee_residual},
                                   {"are", s.residuals.are_residual},
                                   {"positivity_margin", s.residuals.positivity_margin},
                                   {"spectral_factor", s.residuals.spectral_factor_error}}}};
    }
    if (r.sigma_zero)
        j["sigma_zero"] = *r.sigma_zero;

    if (r.compensator) {
        const auto& c = *r.compensator;
        j["compensator"] = json{{"R_num", poly_json(c.R.num())},
                                {"R_den", poly_json(c.R.den())},
                                {"F_num", poly_json(c.F.num())},
                                {"F_den", poly_json(c.F.den())},
                                {"k_num", poly_json(c.k.num())},
                                {"k_den", poly_json(c.k.den())},
                                {"k_proper", c.k_proper},
                                {"properness_defect", c.properness_defect}};
    }
    if (r.condition_iii)
        j["condition_iii"] = json{{"pass", r.condition_iii->pass},
                                  {"margin", r.condition_iii->margin},
                                  {"grid_shifted", r.condition_iii->grid_shifted}};

    if (r.closed_loop) {
        const auto& cl = *r.closed_loop;
        json rows = json::array();
        for (const auto& row : cl.rows) {
            json ps = json::array(), pz = json::array();
            for (auto s : row.poles_s)
                ps.push_back(complex_json(s));
            for (auto z : row.poles_z)
                pz.push_back(complex_json(z));
            rows.push_back(json{{"lambda", row.lambda},
                                {"stable", row.stable},
                                {"properness", row.properness},
                                {"characteristic", poly_json(row.characteristic)},
                                {"poles_s", ps},
                                {"poles_z", pz}});
        }
        j["closed_loop"] = json{{"all_stable", cl.all_stable},
                                {"properness_ok", cl.properness_ok},
                                {"overall_pass", cl.overall_pass},
                                {"rows", rows}};
    }

    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

namespace {

void csv_rows(std::ostringstream& os, const RunReport& r, const std::string& prefix) {
    if (!r.closed_loop)
        return;
    for (const auto& row : r.closed_loop->rows) {
        // poles already sorted by (re, im)
        for (size_t i = 0; i < row.poles_s.size(); ++i) {
            os << prefix << format_double(row.lambda) << ',' << format_double(row.poles_s[i].real())
               << ',' << format_double(row.poles_s[i].imag()) << ','
               << format_double(row.poles_z[i].real()) << ',' << format_double(row.poles_z[i].imag())
               << '\n';
        }
    }
}

} // namespace

std::string report_to_csv(const RunReport& r) {
    std::ostringstream os;
    os << "lambda,re_s,im_s,re_z,im_z\n";
    csv_rows(os, r, "");
    return os.str();
}

std::string sweep_to_csv(const std::vector<RunReport>& runs) {
    std::ostringstream os;
    os << "sigma_zero,lambda,re_s,im_s,re_z,im_z\n";
    for (const auto& r : runs)
        if (r.sigma_zero)
            csv_rows(os, r, format_double(*r.sigma_zero) + ",");
    return os.str();
}

std::string report_to_svg(const RunReport& r) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
          "viewBox=\"0 0 1000 1000\">\n";
    os << "  <rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
    os << "  <circle cx=\"500\" cy=\"500\" r=\"400\" fill=\"none\" stroke=\"black\"/>\n";
    os << "  <line x1=\"100\" y1=\"500\" x2=\"900\" y2=\"500\" stroke=\"#cccccc\"/>\n";
    os << "  <line x1=\"500\" y1=\"100\" x2=\"500\" y2=\"900\" stroke=\"#cccccc\"/>\n";
    if (r.closed_loop) {
        for (const auto& row : r.closed_loop->rows)
            for (auto z : row.poles_z) {
                double px = 500.0 + 400.0 * z.real();
                double py = 500.0 - 400.0 * z.imag();
                if (px < -100 || px > 1100 || py < -100 || py > 1100)
                    continue; // off the canvas
                os << "  <circle cx=\"" << format_double(px) << "\" cy=\"" << format_double(py)
                   << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
            }
    }
    os << "</svg>\n";
    return os.str();
}

std::string report_to_text(const RunReport& r) {
    std::ostringstream os;
    os << "eta zeros in the open RHP:";
    if (r.eta_zeros.empty())
        os << " none";
    os << "\n";
    for (const auto& c : r.eta_zeros) {
        os << "  s = " << format_double(c.root.real());
        if (c.root.imag() != 0.0)
            os << (c.root.imag() > 0 ? " + " : " - ") << format_double(std::abs(c.root.imag()))
               << "i";
        os << "  (multiplicity " << c.multiplicity << ")\n";
    }
    os << "m_infinity = " << r.m_infinity << "\n";
    if (r.infinity_condition.required)
        os << "infinity condition: required, multiplicity " << r.infinity_condition.multiplicity
           << ", target (x1/x0)(inf) = " << format_double(r.infinity_condition.target_value)
           << "\n";
    os << "constraints:\n";
    for (const auto& rc : r.constraints) {
        os << "  node s = " << format_double(rc.node.real());
        if (rc.node.imag() != 0.0)
            os << (rc.node.imag() > 0 ? " + " : " - ") << format_double(std::abs(rc.node.imag()))
               << "i";
        os << ", order " << rc.order << ", source "
           << (rc.source == RatioSource::YRatio ? "y1/y0" : "x1/x0") << ", target";
        for (auto c : rc.target.coeffs) {
            os << " " << format_double(c.real());
            if (c.imag() != 0.0)
                os << (c.imag() > 0 ? "+" : "-") << format_double(std::abs(c.imag())) << "i";
        }
        os << "\n";
    }
    if (r.pick)
        os << "pick test: " << (r.pick->solvable ? "solvable" : "unsolvable")
           << " (min eigenvalue " << format_double(r.pick->min_eigenvalue) << ")\n";
    if (r.solution) {
        os << "solution: a = " << r.solution->a.to_string("z") << ", b = "
           << r.solution->b.to_string("z") << ", rho = " << format_double(r.solution->rho)
           << ", sigma = " << r.solution->sigma.sigma.to_string("z")
           << ", rank P = " << r.solution->rank_P << "\n";
    }
    if (r.compensator) {
        os << "R(s) = " << r.compensator->R.to_string() << "\n";
        os << "k(s) = " << r.compensator->k.to_string()
           << (r.compensator->k_proper ? " (proper)" : " (IMPROPER)") << "\n";
    }
    if (r.condition_iii)
        os << "condition (iii): " << (r.condition_iii->pass ? "pass" : "FAIL") << " (margin "
           << format_double(r.condition_iii->margin) << ")\n";
    if (r.closed_loop) {
        os << "closed loop: " << (r.closed_loop->all_stable ? "all stable" : "UNSTABLE")
           << ", properness " << (r.closed_loop->properness_ok ? "ok" : "DEGENERATE") << "\n";
        for (const auto& row : r.closed_loop->rows) {
            double worst = 0.0;
            for (auto z : row.poles_z)
                worst = std::max(worst, std::abs(z));
            os << "  lambda " << format_double(row.lambda) << ": "
               << (row.stable ? "stable" : "unstable") << ", max |z| = " << format_double(worst)
               << ", 1 + k(inf) p(inf) = " << format_double(row.properness) << "\n";
        }
    }
    for (const auto& w : r.warnings)
        os << "warning: " << w << "\n";
    return os.str();
}

} // namespace simstab
