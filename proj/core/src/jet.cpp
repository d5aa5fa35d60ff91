#include "simstab/jet.hpp"

#include <cmath>
#include <sstream>

#include "simstab/errors.hpp"

namespace simstab {

namespace {

using C = std::complex<double>;

void require_same(const Jet& x, const Jet& y) {
    if (x.order() != y.order())
        throw DomainError("jet arithmetic: order mismatch");
    if (std::abs(x.center - y.center) > 1e-9 * (1.0 + std::abs(x.center)))
        throw DomainError("jet arithmetic: center mismatch");
}

} // namespace

bool Jet::is_real(double tol) const {
    for (auto c : coeffs)
        if (std::abs(c.imag()) > tol)
            return false;
    return true;
}

Jet jet_add(const Jet& x, const Jet& y) {
    require_same(x, y);
    Jet out = x;
    for (int k = 0; k < x.order(); ++k)
        out.coeffs[static_cast<size_t>(k)] += y.coeffs[static_cast<size_t>(k)];
    return out;
}

Jet jet_sub(const Jet& x, const Jet& y) {
    require_same(x, y);
    Jet out = x;
    for (int k = 0; k < x.order(); ++k)
        out.coeffs[static_cast<size_t>(k)] -= y.coeffs[static_cast<size_t>(k)];
    return out;
}

Jet jet_mul(const Jet& x, const Jet& y) {
    require_same(x, y);
    int n = x.order();
    Jet out(x.center, std::vector<C>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j + i < n; ++j)
            out.coeffs[static_cast<size_t>(i + j)] +=
                x.coeffs[static_cast<size_t>(i)] * y.coeffs[static_cast<size_t>(j)];
    return out;
}

Jet jet_div(const Jet& x, const Jet& y) {
    require_same(x, y);
    if (y.coeffs[0] == 0.0)
        throw DomainError("jet_div: division by a jet with zero value");
    int n = x.order();
    Jet out(x.center, std::vector<C>(static_cast<size_t>(n), 0.0));
    for (int k = 0; k < n; ++k) {
        C acc = x.coeffs[static_cast<size_t>(k)];
        for (int i = 1; i <= k; ++i)
            acc -= y.coeffs[static_cast<size_t>(i)] * out.coeffs[static_cast<size_t>(k - i)];
        out.coeffs[static_cast<size_t>(k)] = acc / y.coeffs[0];
    }
    return out;
}

Jet jet_scale(const Jet& x, C s) {
    Jet out = x;
    for (auto& c : out.coeffs)
        c *= s;
    return out;
}

Jet jet_conj(const Jet& x) {
    Jet out(std::conj(x.center), x.coeffs);
    for (auto& c : out.coeffs)
        c = std::conj(c);
    return out;
}

Jet jet_sqrt(const Jet& x) {
    C c0 = x.coeffs.at(0);
    bool on_nonpositive_axis =
        std::abs(c0.imag()) <= 1e-12 * (1.0 + std::abs(c0.real())) && c0.real() <= 0.0;
    if (on_nonpositive_axis) {
        std::ostringstream os;
        os << "jet_sqrt: value " << c0.real()
           << " lies on the nonpositive real axis (no square-root branch; condition (iii) "
              "fails at this node)";
        throw DomainError(os.str());
    }
    int n = x.order();
    Jet out(x.center, std::vector<C>(static_cast<size_t>(n), 0.0));
    out.coeffs[0] = std::sqrt(c0); // principal branch, Re > 0 off the cut
    for (int k = 1; k < n; ++k) {
        C acc = x.coeffs[static_cast<size_t>(k)];
        for (int i = 1; i < k; ++i)
            acc -= out.coeffs[static_cast<size_t>(i)] * out.coeffs[static_cast<size_t>(k - i)];
        out.coeffs[static_cast<size_t>(k)] = acc / (2.0 * out.coeffs[0]);
    }
    return out;
}

Jet jet_compose_mobius(const Jet& x, const MobiusMap& m, C new_center) {
    C mapped = m(new_center);
    if (std::abs(mapped - x.center) > 1e-8 * (1.0 + std::abs(x.center)))
        throw DomainError("jet_compose_mobius: map(new_center) does not hit the jet center");
    int n = x.order();
    // jet of the (linear/linear) map at new_center by series division
    std::vector<C> num(static_cast<size_t>(n), 0.0), den(static_cast<size_t>(n), 0.0);
    num[0] = m.a * new_center + m.b;
    if (n > 1)
        num[1] = m.a;
    den[0] = m.c * new_center + m.d;
    if (n > 1)
        den[1] = m.c;
    if (den[0] == 0.0)
        throw DomainError("jet_compose_mobius: map has a pole at new_center");
    Jet mj(new_center, std::vector<C>(static_cast<size_t>(n), 0.0));
    for (int k = 0; k < n; ++k) {
        C acc = num[static_cast<size_t>(k)];
        for (int i = 1; i <= k; ++i)
            acc -= den[static_cast<size_t>(i)] * mj.coeffs[static_cast<size_t>(k - i)];
        mj.coeffs[static_cast<size_t>(k)] = acc / den[0];
    }
    // u = m - m(new_center): composition variable with zero constant term
    Jet u = mj;
    u.coeffs[0] = 0.0;
    Jet out(new_center, std::vector<C>(static_cast<size_t>(n), 0.0));
    out.coeffs[0] = x.coeffs[0];
    Jet upow(new_center, std::vector<C>(static_cast<size_t>(n), 0.0));
    upow.coeffs[0] = 1.0;
    for (int k = 1; k < n; ++k) {
        upow = jet_mul(upow, u);
        for (int i = 0; i < n; ++i)
            out.coeffs[static_cast<size_t>(i)] +=
                x.coeffs[static_cast<size_t>(k)] * upow.coeffs[static_cast<size_t>(i)];
    }
    return out;
}

C jet_eval(const Jet& x, C z) {
    C d = z - x.center;
    C acc = 0.0;
    for (int k = x.order() - 1; k >= 0; --k)
        acc = acc * d + x.coeffs[static_cast<size_t>(k)];
    return acc;
}

} // namespace simstab
