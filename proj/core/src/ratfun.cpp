#include "simstab/ratfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "simstab/errors.hpp"

namespace simstab {

namespace {

// expand clusters into a flat root list (root repeated multiplicity times)
std::vector<Complex> flatten(const std::vector<RootCluster>& clusters) {
    std::vector<Complex> out;
    for (const auto& c : clusters)
        for (int i = 0; i < c.multiplicity; ++i)
            out.push_back(c.root);
    return out;
}

double eval_scale(const RealPoly& p, Complex z) {
    double az = std::abs(z);
    double s = 0.0;
    for (double c : p.coeffs())
        s = s * az + std::abs(c);
    return s;
}

} // namespace

RatFun RatFun::reduced(const RealPoly& num_in, const RealPoly& den_in, double tol) {
    if (den_in.is_zero())
        throw DomainError("RatFun: zero denominator");
    RealPoly num = num_in.trimmed(1e-14);
    RealPoly den = den_in.trimmed(1e-14);
    if (num.is_zero())
        return RatFun(RealPoly(), RealPoly::constant(1.0));

    std::vector<Complex> nroots = flatten(poly_roots(num));
    std::vector<Complex> droots = flatten(poly_roots(den));
    std::vector<bool> used(droots.size(), false);
    std::vector<Complex> keep_n;
    for (const auto& r : nroots) {
        size_t hit = droots.size();
        double best = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < droots.size(); ++j) {
            if (used[j])
                continue;
            double d = std::abs(r - droots[j]);
            if (d <= tol * (1.0 + std::abs(r)) && d < best) {
                best = d;
                hit = j;
            }
        }
        if (hit < droots.size())
            used[hit] = true;
        else
            keep_n.push_back(r);
    }
    std::vector<Complex> keep_d;
    for (size_t j = 0; j < droots.size(); ++j)
        if (!used[j])
            keep_d.push_back(droots[j]);

    double gain = num.leading() / den.leading();
    RealPoly rn = RealPoly::from_roots(keep_n, gain);
    RealPoly rd = RealPoly::from_roots(keep_d, 1.0);
    return RatFun(std::move(rn), std::move(rd));
}

RatFun RatFun::constant(double c) {
    return RatFun(RealPoly::constant(c), RealPoly::constant(1.0));
}

RatFun RatFun::from_factors(std::span<const Complex> zeros, std::span<const Complex> poles,
                            double gain, double tol) {
    return reduced(RealPoly::from_roots(zeros, gain), RealPoly::from_roots(poles, 1.0), tol);
}

Jet RatFun::jet_at(Complex s0, int order) const {
    auto dt = den_.taylor(s0, order);
    if (std::abs(dt[0]) <= 1e-12 * std::max(eval_scale(den_, s0), 1e-300)) {
        std::ostringstream os;
        os << "RatFun::jet_at: s = (" << s0.real() << ", " << s0.imag()
           << ") is a pole of the function";
        throw DomainError(os.str());
    }
    auto nt = num_.taylor(s0, order);
    Jet out(s0, std::vector<Complex>(static_cast<size_t>(order), 0.0));
    for (int k = 0; k < order; ++k) {
        Complex acc = nt[static_cast<size_t>(k)];
        for (int i = 1; i <= k; ++i)
            acc -= dt[static_cast<size_t>(i)] * out.coeffs[static_cast<size_t>(k - i)];
        out.coeffs[static_cast<size_t>(k)] = acc / dt[0];
    }
    return out;
}

double RatFun::value_at_infinity() const {
    int rd = relative_degree();
    if (rd < 0)
        throw DomainError("value_at_infinity: improper rational function");
    if (rd > 0)
        return 0.0;
    return num_.leading() / den_.leading();
}

RatFun RatFun::operator+(const RatFun& o) const {
    return reduced(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
    return reduced(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const {
    return reduced(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
    if (o.is_zero())
        throw DomainError("RatFun: division by zero function");
    return reduced(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::operator*(double c) const { return RatFun(num_ * c, den_); }

std::string RatFun::to_string(const std::string& var) const {
    std::ostringstream os;
    os << "(" << num_.to_string(var) << ") / (" << den_.to_string(var) << ")";
    return os.str();
}

HMembership membership_H(const RatFun& r) {
    if (!r.is_proper())
        return {false, "improper (deg num > deg den)"};
    if (r.den().degree() > 0) {
        auto st = stability_test(r.den(), StabilityRegion::OpenLeftHalfPlane, 0.0);
        if (!st.stable) {
            std::ostringstream os;
            os << "pole at (" << st.witnesses[0].real() << ", " << st.witnesses[0].imag() << ")";
            return {false, os.str()};
        }
    }
    return {true, ""};
}

RatFun mobius_substitute(const RatFun& r, const MobiusMap& m, double tol) {
    const auto& n = r.num().coeffs();
    const auto& d = r.den().coeffs();
    int D = std::max(r.num().degree(), r.den().degree());
    RealPoly ab({m.a, m.b});
    RealPoly cd({m.c, m.d});

    auto lift = [&](const std::vector<double>& p) {
        int dp = static_cast<int>(p.size()) - 1;
        RealPoly acc; // zero
        for (int k = 0; k <= dp; ++k) {
            int e = dp - k; // exponent of this term
            RealPoly term = RealPoly::constant(p[static_cast<size_t>(k)]);
            for (int i = 0; i < e; ++i)
                term = term * ab;
            for (int i = 0; i < D - e; ++i)
                term = term * cd;
            acc = acc + term;
        }
        return acc;
    };

    RealPoly num2 = lift(n);
    RealPoly den2 = lift(d);
    den2 = den2.trimmed(1e-13);
    num2 = num2.trimmed(1e-13);
    if (den2.is_zero())
        throw DomainError("mobius_substitute: denominator collapsed to zero");
    return RatFun::reduced(num2, den2, tol);
}

} // namespace simstab
