#include "simstab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "simstab/errors.hpp"

namespace simstab {

RealPoly::RealPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    size_t lead = 0;
    while (lead + 1 < coeffs_.size() && coeffs_[lead] == 0.0)
        ++lead;
    if (lead > 0)
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    if (coeffs_.empty())
        coeffs_ = {0.0};
}

RealPoly RealPoly::from_roots(std::span<const Complex> roots, double lead) {
    std::vector<Complex> pending(roots.begin(), roots.end());
    std::vector<double> acc{lead};
    auto mul = [&acc](std::span<const double> factor) {
        std::vector<double> out(acc.size() + factor.size() - 1, 0.0);
        for (size_t i = 0; i < acc.size(); ++i)
            for (size_t j = 0; j < factor.size(); ++j)
                out[i + j] += acc[i] * factor[j];
        acc = std::move(out);
    };
    while (!pending.empty()) {
        Complex r = pending.back();
        pending.pop_back();
        if (std::abs(r.imag()) <= 1e-12 * (1.0 + std::abs(r))) {
            double f[2] = {1.0, -r.real()};
            mul(f);
            continue;
        }
        // find the conjugate partner; closest match wins
        size_t best = pending.size();
        double bestd = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < pending.size(); ++i) {
            double d = std::abs(pending[i] - std::conj(r));
            if (d < bestd) {
                bestd = d;
                best = i;
            }
        }
        if (best == pending.size())
            throw DomainError("RealPoly::from_roots: complex root without conjugate partner");
        Complex q = pending[best];
        pending.erase(pending.begin() + static_cast<long>(best));
        double re = 0.5 * (r.real() + q.real());
        double m2 = 0.5 * (std::norm(r) + std::norm(q));
        double f[3] = {1.0, -2.0 * re, m2};
        mul(f);
    }
    return RealPoly(std::move(acc));
}

double RealPoly::operator()(double x) const {
    double acc = 0.0;
    for (double c : coeffs_)
        acc = acc * x + c;
    return acc;
}

Complex RealPoly::operator()(Complex x) const {
    Complex acc = 0.0;
    for (double c : coeffs_)
        acc = acc * x + c;
    return acc;
}

RealPoly RealPoly::derivative() const {
    if (degree() == 0)
        return RealPoly();
    std::vector<double> out(coeffs_.size() - 1);
    int n = degree();
    for (int k = 0; k < n; ++k)
        out[static_cast<size_t>(k)] = coeffs_[static_cast<size_t>(k)] * (n - k);
    return RealPoly(std::move(out));
}

std::vector<Complex> RealPoly::taylor(Complex center, int order) const {
    // repeated synthetic division by (x - center)
    std::vector<Complex> work(coeffs_.begin(), coeffs_.end());
    std::vector<Complex> out;
    out.reserve(static_cast<size_t>(order));
    for (int k = 0; k < order; ++k) {
        if (work.empty()) {
            out.push_back(0.0);
            continue;
        }
        Complex r = work[0];
        for (size_t i = 1; i < work.size(); ++i) {
            work[i - 1] = r;
            r = work[i] + r * center;
        }
        out.push_back(r);
        work.pop_back();
    }
    return out;
}

double RealPoly::coeff_scale() const {
    double m = 0.0;
    for (double c : coeffs_)
        m = std::max(m, std::abs(c));
    return m;
}

RealPoly RealPoly::trimmed(double rel_tol) const {
    double cut = rel_tol * coeff_scale();
    size_t lead = 0;
    while (lead + 1 < coeffs_.size() && std::abs(coeffs_[lead]) <= cut)
        ++lead;
    std::vector<double> out(coeffs_.begin() + static_cast<long>(lead), coeffs_.end());
    if (std::abs(out[0]) <= cut)
        return RealPoly();
    return RealPoly(std::move(out));
}

RealPoly RealPoly::operator+(const RealPoly& o) const {
    size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    std::vector<double> out(n, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        out[n - coeffs_.size() + i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i)
        out[n - o.coeffs_.size() + i] += o.coeffs_[i];
    return RealPoly(std::move(out));
}

RealPoly RealPoly::operator-(const RealPoly& o) const { return *this + o * -1.0; }

RealPoly RealPoly::operator*(const RealPoly& o) const {
    if (is_zero() || o.is_zero())
        return RealPoly();
    std::vector<double> out(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    return RealPoly(std::move(out));
}

RealPoly RealPoly::operator*(double s) const {
    std::vector<double> out(coeffs_);
    for (double& c : out)
        c *= s;
    return RealPoly(std::move(out));
}

std::string RealPoly::to_string(const std::string& var) const {
    std::ostringstream os;
    int n = degree();
    bool first = true;
    for (int k = 0; k <= n; ++k) {
        double c = coeffs_[static_cast<size_t>(k)];
        if (c == 0.0 && n > 0)
            continue;
        int e = n - k;
        if (!first)
            os << (c >= 0 ? " + " : " - ");
        else if (c < 0)
            os << "-";
        first = false;
        double m = std::abs(c);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", m);
        if (e == 0 || m != 1.0)
            os << buf;
        if (e > 0) {
            if (m != 1.0)
                os << " ";
            os << var;
            if (e > 1)
                os << "^" << e;
        }
    }
    if (first)
        os << "0";
    return os.str();
}

StabilityResult stability_test(const RealPoly& p, StabilityRegion region, double margin) {
    auto clusters = poly_roots(p);
    StabilityResult res;
    res.stable = true;
    for (const auto& c : clusters) {
        bool ok = region == StabilityRegion::OpenLeftHalfPlane
                      ? c.root.real() < -margin
                      : std::abs(c.root) < 1.0 - margin;
        if (!ok) {
            res.stable = false;
            for (int i = 0; i < c.multiplicity; ++i)
                res.witnesses.push_back(c.root);
        }
    }
    return res;
}

} // namespace simstab
