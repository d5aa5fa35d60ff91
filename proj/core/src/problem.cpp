#include "simstab/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
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

// |r(s)| measured against the roundoff scale of its numerator
bool vanishes_at(const RatFun& r, Complex s, double rel = 1e-9) {
    double scale = eval_scale(r.num(), s);
    return std::abs(r.num()(s)) <= rel * std::max(scale, 1e-300);
}

RatFun eta_of(const PlantPair& p, double reduce_tol) {
    RealPoly num = p.x0.num() * p.y1.num() * (p.x1.den() * p.y0.den()) -
                   p.x1.num() * p.y0.num() * (p.x0.den() * p.y1.den());
    RealPoly den = p.x0.den() * p.y0.den() * (p.x1.den() * p.y1.den());
    num = num.trimmed(1e-12);
    if (num.is_zero())
        throw InputError("identical plants: x0 y1 - x1 y0 is identically zero");
    return RatFun::reduced(num, den, reduce_tol);
}

std::string fmt_node(Complex s) {
    std::ostringstream os;
    os << "s = " << s.real();
    if (s.imag() != 0.0)
        os << (s.imag() > 0 ? " + " : " - ") << std::abs(s.imag()) << "i";
    return os.str();
}

} // namespace

PlantPair make_plant_pair(RatFun x0, RatFun y0, RatFun x1, RatFun y1) {
    const struct {
        const char* name;
        const RatFun* f;
    } factors[] = {{"x0", &x0}, {"y0", &y0}, {"x1", &x1}, {"y1", &y1}};
    for (const auto& [name, f] : factors) {
        auto m = membership_H(*f);
        if (!m.in_H) {
            std::ostringstream os;
            os << "plant factor " << name << " is not in H: " << m.reason;
            throw InputError(os.str());
        }
    }
    // coprimeness of each factorization over the closed RHP
    auto check_coprime = [](const RatFun& x, const RatFun& y, const char* which) {
        if (x.is_zero() || y.is_zero())
            return;
        auto zx = poly_roots(x.num());
        auto zy = poly_roots(y.num());
        for (const auto& a : zx)
            for (const auto& b : zy)
                if (a.root.real() > -1e-9 && std::abs(a.root - b.root) <= 1e-6 * (1.0 + std::abs(a.root))) {
                    std::ostringstream os;
                    os << "factorization " << which << " is not coprime: common closed-RHP zero near "
                       << fmt_node(a.root);
                    throw InputError(os.str());
                }
    };
    check_coprime(x0, y0, "(x0, y0)");
    check_coprime(x1, y1, "(x1, y1)");

    PlantPair p{std::move(x0), std::move(y0), std::move(x1), std::move(y1)};
    eta_of(p, 1e-9); // throws InputError when the plants coincide
    return p;
}

EtaAnalysis compute_eta(const PlantPair& p, double reduce_tol) {
    EtaAnalysis out;
    out.eta = eta_of(p, reduce_tol);
    out.m_infinity = out.eta.relative_degree();

    auto clusters = poly_roots(out.eta.num());
    for (const auto& c : clusters) {
        if (std::abs(c.root.real()) < 1e-8)
            out.boundary_zeros.push_back(c);
        else if (c.root.real() > 0.0)
            out.rhp_zeros.push_back(c);
    }
    std::sort(out.rhp_zeros.begin(), out.rhp_zeros.end(), [](const auto& a, const auto& b) {
        if (a.root.real() != b.root.real())
            return a.root.real() > b.root.real();
        return a.root.imag() < b.root.imag();
    });
    if (!out.boundary_zeros.empty()) {
        std::ostringstream os;
        os << "eta vanishes on the imaginary axis (" << fmt_node(out.boundary_zeros[0].root)
           << "); boundary interpolation is unsupported";
        throw InfeasibleError(os.str());
    }
    return out;
}

int infinity_multiplicity(const PlantPair& p, double reduce_tol) {
    return eta_of(p, reduce_tol).relative_degree();
}

StabilizationProblem build_constraints(const PlantPair& p, const EtaAnalysis& a) {
    StabilizationProblem sp{p, a, {}, {}};

    for (const auto& [sj, mj] : a.rhp_zeros) {
        RConstraint rc;
        rc.node = sj;
        rc.order = mj;
        bool y_ok = !vanishes_at(p.y0, sj);
        bool x_ok = !vanishes_at(p.x0, sj);
        if (y_ok) {
            rc.source = RatioSource::YRatio;
            rc.target = jet_div(p.y1.jet_at(sj, mj), p.y0.jet_at(sj, mj));
        } else if (x_ok) {
            rc.source = RatioSource::XRatio;
            rc.target = jet_div(p.x1.jet_at(sj, mj), p.x0.jet_at(sj, mj));
        } else {
            std::ostringstream os;
            os << "infeasible problem: y0 and x0 both vanish at " << fmt_node(sj)
               << " (coprimeness violated)";
            throw InfeasibleError(os.str());
        }
        Complex c0 = rc.target.value();
        if (std::abs(c0.imag()) <= 1e-12 * (1.0 + std::abs(c0.real())) && c0.real() <= 0.0) {
            std::ostringstream os;
            os << "condition (iii) violated at " << fmt_node(sj) << ": target value "
               << c0.real() << " lies on the nonpositive real axis";
            throw InfeasibleError(os.str());
        }
        sp.constraints.push_back(std::move(rc));
    }

    // conjugate nodes get exactly conjugate jets
    for (auto& rc : sp.constraints) {
        if (rc.node.imag() <= 0.0)
            continue;
        for (auto& other : sp.constraints) {
            if (other.node.imag() < 0.0 &&
                std::abs(std::conj(other.node) - rc.node) <= 1e-9 * (1.0 + std::abs(rc.node))) {
                other.node = std::conj(rc.node);
                other.target = jet_conj(rc.target);
                other.source = rc.source;
            }
        }
    }
    // jets at real nodes are real
    for (auto& rc : sp.constraints) {
        if (rc.node.imag() == 0.0) {
            if (!rc.target.is_real(1e-8))
                throw SolverError("constraint jet at a real node has a significant imaginary part");
            for (auto& c : rc.target.coeffs)
                c = Complex(c.real(), 0.0);
        }
    }

    if (a.m_infinity > 0) {
        sp.infinity_condition.required = true;
        sp.infinity_condition.multiplicity = a.m_infinity;
        double x0inf = p.x0.value_at_infinity();
        double x1inf = p.x1.value_at_infinity();
        sp.infinity_condition.target_value =
            x0inf != 0.0 ? x1inf / x0inf : std::numeric_limits<double>::infinity();
    }
    return sp;
}

StabilizationProblem analyze_plants(const PlantPair& p, double reduce_tol) {
    return build_constraints(p, compute_eta(p, reduce_tol));
}

} // namespace simstab
