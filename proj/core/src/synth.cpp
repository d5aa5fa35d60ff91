#include "simstab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "simstab/errors.hpp"

namespace simstab {

namespace {

double eval_scale(const RealPoly& p, Complex z) {
    double az = std::abs(z);
    double s = 0.0;
    for (double c : p.coeffs())
        s = s * az + std::abs(c);
    return s;
}

// distance of a complex value to the ray (-inf, 0]
double distance_to_nonpositive_axis(Complex v) {
    if (v.real() <= 0.0)
        return std::abs(v.imag());
    return std::abs(v);
}

// limit of k(s) p(s) at s -> infinity (may be infinite)
double loop_gain_at_infinity(const RatFun& k, const RatFun& p) {
    int rd = (k.den().degree() + p.den().degree()) - (k.num().degree() + p.num().degree());
    if (k.is_zero() || p.is_zero())
        return 0.0;
    if (rd > 0)
        return 0.0;
    double ratio = (k.num().leading() * p.num().leading()) / (k.den().leading() * p.den().leading());
    if (rd < 0)
        return std::numeric_limits<double>::infinity() * (ratio >= 0 ? 1.0 : -1.0);
    return ratio;
}

} // namespace

std::vector<double> default_lambda_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i)
        g.push_back(i / 10.0);
    return g;
}

LiftedInterpolant denormalize_and_lift(const CeeSolution& sol, const NormalizationTranscript& t,
                                       std::span<const RConstraint> check, double tol) {
    RatFun f = assemble_f(sol);
    // undo the range scaling and the disc automorphism
    RatFun f_denorm = mobius_substitute(f, MobiusMap::disc_automorphism(t.alpha)) * (1.0 / t.gamma);
    LiftedInterpolant lift;
    lift.F = mobius_substitute(f_denorm, MobiusMap::rhp_from_disc());
    lift.R = lift.F * lift.F;

    // transport check: jets of R at the original nodes against the targets
    double worst = 0.0;
    Complex worst_node = 0.0;
    for (const auto& rc : check) {
        Jet jr = lift.R.jet_at(rc.node, rc.order);
        for (int k = 0; k < rc.order; ++k) {
            double err = std::abs(jr.coeffs[static_cast<size_t>(k)] -
                                  rc.target.coeffs[static_cast<size_t>(k)]) /
                         (1.0 + std::abs(rc.target.coeffs[static_cast<size_t>(k)]));
            if (err > worst) {
                worst = err;
                worst_node = rc.node;
            }
        }
    }
    if (worst > tol) {
        std::ostringstream os;
        os << "denormalize_and_lift: interpolation transport residual " << worst
           << " at node s = (" << worst_node.real() << ", " << worst_node.imag()
           << ") exceeds tolerance " << tol;
        throw SolverError(os.str());
    }

    // Caratheodory pullback: F maps the sampled open RHP into the open RHP
    static const double radii[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0};
    for (double r : radii)
        for (int i = -4; i <= 4; ++i) {
            double th = i * (std::numbers::pi / 10.0);
            Complex s = r * Complex(std::cos(th), std::sin(th));
            if (lift.F(s).real() <= 0.0) {
                std::ostringstream os;
                os << "denormalize_and_lift: F leaves the right half plane at s = ("
                   << s.real() << ", " << s.imag() << ")";
                throw SolverError(os.str());
            }
        }
    return lift;
}

Compensator make_compensator(const PlantPair& p, const LiftedInterpolant& lift,
                             const EtaAnalysis* analysis) {
    Compensator comp;
    comp.R = lift.R;
    comp.F = lift.F;
    RatFun numerator = p.y1 - lift.R * p.y0;   // Delta0^-1 (Delta0 y1 - Delta1 y0)
    RatFun denominator = lift.R * p.x0 - p.x1; // Delta0^-1 (Delta1 x0 - Delta0 x1)
    if (denominator.is_zero())
        throw DomainError("make_compensator: R x0 - x1 is identically zero");
    comp.k = numerator / denominator;
    comp.k_proper = comp.k.is_proper();
    comp.properness_defect = comp.k_proper ? 0.0 : -comp.k.relative_degree();

    // condition (i) realized: eta's RHP zeros cancel in both combinations
    if (analysis) {
        for (const auto& [sj, mj] : analysis->rhp_zeros) {
            for (const RatFun* part : {&numerator, &denominator}) {
                Jet j = part->jet_at(sj, mj + 1);
                double scale = std::max(1.0, std::abs(j.coeffs[static_cast<size_t>(mj)]));
                for (int k = 0; k < mj; ++k)
                    if (std::abs(j.coeffs[static_cast<size_t>(k)]) > 1e-6 * scale) {
                        std::ostringstream os;
                        os << "make_compensator: imperfect cancellation of the eta zero at s = ("
                           << sj.real() << ", " << sj.imag() << "): residual "
                           << std::abs(j.coeffs[static_cast<size_t>(k)]);
                        throw SolverError(os.str());
                    }
            }
        }
    }
    return comp;
}

ConditionIIIReport condition_iii_check(const RatFun& R) {
    ConditionIIIReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    auto probe = [&](Complex s) {
        if (std::abs(R.den()(s)) <= 1e-9 * std::max(eval_scale(R.den(), s), 1e-300)) {
            s *= 1.0 + 1e-3;
            rep.grid_shifted = true;
        }
        rep.margin = std::min(rep.margin, distance_to_nonpositive_axis(R(s)));
    };
    // imaginary axis, both signs, log-spaced
    for (int i = 0; i < 160; ++i) {
        double w = std::pow(10.0, -4.0 + 8.0 * i / 159.0);
        probe(Complex(0.0, w));
        probe(Complex(0.0, -w));
    }
    probe(Complex(0.0, 0.0));
    // large semicircle
    for (int i = 0; i <= 32; ++i) {
        double th = -std::numbers::pi / 2 + std::numbers::pi * i / 32.0;
        probe(1e6 * Complex(std::cos(th), std::sin(th)));
    }
    // coarse interior grid
    static const double radii[] = {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1e3};
    for (double r : radii)
        for (int i = -4; i <= 4; ++i) {
            double th = i * (std::numbers::pi / 9.0) / 2.0;
            probe(r * Complex(std::cos(th), std::sin(th)));
        }
    rep.pass = rep.margin > 0.0;
    return rep;
}

ClosedLoopReport closed_loop(const PlantPair& p, const RatFun& k,
                             std::span<const double> lambda_grid, double stability_margin,
                             double properness_tol) {
    std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
    std::sort(grid.begin(), grid.end());
    if (grid.empty() || grid.front() != 0.0 || grid.back() != 1.0)
        throw DomainError("closed_loop: lambda grid must lie in [0,1] and include 0 and 1");
    for (double l : grid)
        if (l < 0.0 || l > 1.0)
            throw DomainError("closed_loop: lambda grid must lie in [0,1]");

    ClosedLoopReport rep;
    rep.all_stable = true;
    rep.properness_ok = true;
    for (double lam : grid) {
        LambdaRow row;
        row.lambda = lam;

        // p_lambda as a reduced polynomial fraction
        RealPoly xn = p.x1.num() * p.x0.den() * lam + p.x0.num() * p.x1.den() * (1.0 - lam);
        RealPoly yn = p.y1.num() * p.y0.den() * lam + p.y0.num() * p.y1.den() * (1.0 - lam);
        RealPoly xd = p.x0.den() * p.x1.den();
        RealPoly yd = p.y0.den() * p.y1.den();
        RatFun p_lam = RatFun::reduced(xn * yd, xd * yn);

        RealPoly char_poly = p_lam.den() * k.den() + p_lam.num() * k.num();
        char_poly = char_poly.trimmed(1e-9);
        if (char_poly.is_zero())
            throw DomainError("closed_loop: characteristic polynomial is identically zero");
        row.characteristic = char_poly;

        if (char_poly.degree() > 0) {
            for (const auto& c : poly_roots(char_poly))
                for (int i = 0; i < c.multiplicity; ++i)
                    row.poles_s.push_back(c.root);
        }
        std::sort(row.poles_s.begin(), row.poles_s.end(), [](Complex a, Complex b) {
            if (a.real() != b.real())
                return a.real() < b.real();
            return a.imag() < b.imag();
        });

        row.stable = true;
        for (const auto& s : row.poles_s) {
            Complex denom = 1.0 - s;
            Complex z = std::abs(denom) < 1e-300 ? Complex(1e300, 0.0) : (1.0 + s) / denom;
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                z = Complex(1e300, 0.0);
            row.poles_z.push_back(z);
            if (!(std::abs(z) < 1.0 - stability_margin))
                row.stable = false;
        }

        double loop_inf = loop_gain_at_infinity(k, p_lam);
        row.properness = 1.0 + loop_inf;
        rep.all_stable = rep.all_stable && row.stable;
        if (!std::isfinite(row.properness) || std::abs(row.properness) <= properness_tol)
            rep.properness_ok = false;
        rep.rows.push_back(std::move(row));
    }
    rep.overall_pass = rep.all_stable && rep.properness_ok;
    return rep;
}

} // namespace simstab
