#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "simstab/errors.hpp"
#include "simstab/poly.hpp"

namespace simstab {

namespace {

// p(z) and p'(z) in one Horner pass; coefficients highest first.
std::pair<Complex, Complex> eval_with_derivative(std::span<const double> c, Complex z) {
    Complex p = 0.0, dp = 0.0;
    for (double ck : c) {
        dp = dp * z + p;
        p = p * z + ck;
    }
    return {p, dp};
}

// backward-error scale sum |c_k| |z|^(n-k)
double eval_scale(std::span<const double> c, Complex z) {
    double az = std::abs(z);
    double s = 0.0;
    for (double ck : c)
        s = s * az + std::abs(ck);
    return s;
}

std::vector<Complex> aberth(std::span<const double> coeffs, const RootFindOptions& opts) {
    int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<Complex> z(static_cast<size_t>(n));

    // start on a circle sized by the geometric mean of the root moduli,
    // clamped into the Cauchy bound; irrational angle offset breaks symmetry
    double maxc = 0.0;
    for (size_t k = 1; k < coeffs.size(); ++k)
        maxc = std::max(maxc, std::abs(coeffs[k] / coeffs[0]));
    double cauchy = 1.0 + maxc;
    double tail = std::abs(coeffs.back() / coeffs[0]);
    double radius = tail > 0 ? std::pow(tail, 1.0 / n) : 0.5;
    radius = std::clamp(radius, 1e-3, cauchy);
    radius *= 1.2;
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * std::numbers::pi * i / n + 0.381966;
        z[static_cast<size_t>(i)] = radius * Complex(std::cos(th), std::sin(th));
    }

    double best_residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_iterations; ++it) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            auto [p, dp] = eval_with_derivative(coeffs, z[static_cast<size_t>(i)]);
            double scale = eval_scale(coeffs, z[static_cast<size_t>(i)]);
            worst = std::max(worst, std::abs(p) / std::max(scale, 1e-300));
            if (std::abs(p) <= 1e-3 * opts.tol * scale)
                continue; // already at the noise floor
            if (dp == 0.0) {
                z[static_cast<size_t>(i)] += 1e-6 * radius * Complex(1.0, 1.0);
                continue;
            }
            Complex newton = p / dp;
            Complex repulsion = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                Complex diff = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
                if (diff == 0.0)
                    diff = 1e-12 * radius;
                repulsion += 1.0 / diff;
            }
            Complex denom = 1.0 - newton * repulsion;
            Complex step = denom == 0.0 ? newton : newton / denom;
            z[static_cast<size_t>(i)] -= step;
        }
        best_residual = std::min(best_residual, worst);
        if (worst <= opts.tol)
            return z;
    }
    // final residual check
    double worst = 0.0;
    for (auto& zi : z) {
        auto [p, dp] = eval_with_derivative(coeffs, zi);
        (void)dp;
        worst = std::max(worst, std::abs(p) / std::max(eval_scale(coeffs, zi), 1e-300));
    }
    if (worst <= opts.tol)
        return z;
    std::ostringstream os;
    os << "poly_roots: Aberth iteration did not converge after " << opts.max_iterations
       << " iterations (best residual " << std::min(best_residual, worst) << ", tol " << opts.tol
       << ")";
    throw SolverError(os.str());
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double radius) {
    std::vector<RootCluster> clusters;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i])
            continue;
        Complex sum = roots[i];
        int count = 1;
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            Complex mean = sum / static_cast<double>(count);
            for (size_t j = 0; j < roots.size(); ++j) {
                if (used[j])
                    continue;
                if (std::abs(roots[j] - mean) <= radius * (1.0 + std::abs(mean))) {
                    sum += roots[j];
                    ++count;
                    used[j] = true;
                    grew = true;
                }
            }
        }
        clusters.push_back({sum / static_cast<double>(count), count});
    }
    return clusters;
}

// enforce conjugate pairing on the cluster list of a real polynomial
void conjugate_closure(std::vector<RootCluster>& clusters, double radius) {
    for (auto& c : clusters)
        if (std::abs(c.root.imag()) <= radius * (1.0 + std::abs(c.root)))
            c.root = Complex(c.root.real(), 0.0);
    std::vector<bool> done(clusters.size(), false);
    for (size_t i = 0; i < clusters.size(); ++i) {
        if (done[i] || clusters[i].root.imag() <= 0.0)
            continue;
        size_t best = clusters.size();
        double bestd = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < clusters.size(); ++j) {
            if (done[j] || j == i || clusters[j].root.imag() >= 0.0)
                continue;
            if (clusters[j].multiplicity != clusters[i].multiplicity)
                continue;
            double d = std::abs(std::conj(clusters[j].root) - clusters[i].root);
            if (d < bestd) {
                bestd = d;
                best = j;
            }
        }
        if (best < clusters.size()) {
            Complex w = 0.5 * (clusters[i].root + std::conj(clusters[best].root));
            clusters[i].root = w;
            clusters[best].root = std::conj(w);
            done[i] = done[best] = true;
        }
    }
}

// Newton polish on the (m-1)-th derivative, which has a simple root at an
// m-fold root of p
void polish_clusters(const RealPoly& p, std::vector<RootCluster>& clusters, double radius) {
    for (auto& c : clusters) {
        RealPoly q = p;
        for (int k = 1; k < c.multiplicity; ++k)
            q = q.derivative();
        RealPoly dq = q.derivative();
        Complex z = c.root;
        Complex z0 = z;
        for (int it = 0; it < 20; ++it) {
            Complex qv = q(z);
            Complex dv = dq(z);
            if (dv == 0.0)
                break;
            Complex step = qv / dv;
            z -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z)))
                break;
        }
        bool in_range = std::abs(z - z0) <= 10.0 * radius * (1.0 + std::abs(z0));
        if (in_range && std::abs(q(z)) <= std::abs(q(z0)))
            c.root = c.root.imag() == 0.0 ? Complex(z.real(), 0.0) : z;
    }
}

int total_multiplicity_excess(const std::vector<RootCluster>& clusters) {
    int s = 0;
    for (const auto& c : clusters)
        s += c.multiplicity - 1;
    return s;
}

} // namespace

int approx_gcd_degree(const RealPoly& p, const RealPoly& q, double tol) {
    if (p.is_zero() || q.is_zero())
        throw DomainError("approx_gcd_degree: zero polynomial");
    // Euclid with a relative cutoff on the remainder norm
    std::vector<double> r0 = p.coeffs(), r1 = q.coeffs();
    auto norm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v)
            m = std::max(m, std::abs(x));
        return m;
    };
    double scale = std::max(norm(r0), norm(r1));
    auto normalize = [&](std::vector<double>& v) {
        double m = norm(v);
        if (m > 0)
            for (double& x : v)
                x /= m;
    };
    normalize(r0);
    normalize(r1);
    if (r0.size() < r1.size())
        std::swap(r0, r1);
    (void)scale;
    while (true) {
        // r2 = r0 mod r1
        std::vector<double> rem = r0;
        size_t dr = r1.size() - 1;
        while (rem.size() >= r1.size() && rem.size() > 1) {
            double f = rem[0] / r1[0];
            for (size_t i = 0; i <= dr; ++i)
                rem[i] -= f * r1[i];
            rem.erase(rem.begin());
            // strip further exact cancellation
            while (rem.size() >= r1.size() && std::abs(rem[0]) <= 1e-13 * norm(rem) && rem.size() > 1)
                rem.erase(rem.begin());
        }
        if (norm(rem) <= tol || rem.size() <= 1) {
            bool rem_zero = norm(rem) <= tol;
            if (rem_zero)
                return static_cast<int>(r1.size()) - 1;
            return 0; // remainder is a nonzero constant: coprime
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        normalize(r1);
    }
}

std::vector<RootCluster> poly_roots(const RealPoly& p, const RootFindOptions& opts) {
    if (p.is_zero())
        throw DomainError("poly_roots: zero polynomial");
    if (p.degree() == 0)
        return {};

    // pull out exact roots at the origin
    std::vector<double> c = p.coeffs();
    int zeros_at_origin = 0;
    while (c.size() > 1 && c.back() == 0.0) {
        c.pop_back();
        ++zeros_at_origin;
    }

    std::vector<Complex> raw;
    int n = static_cast<int>(c.size()) - 1;
    if (n == 1) {
        raw.push_back(Complex(-c[1] / c[0], 0.0));
    } else if (n == 2) {
        double a = c[0], b = c[1], cc = c[2];
        double disc = b * b - 4.0 * a * cc;
        if (disc >= 0.0) {
            double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            double r1 = q / a;
            double r2 = q != 0.0 ? cc / q : -b / a - r1;
            raw.push_back(Complex(r1, 0.0));
            raw.push_back(Complex(r2, 0.0));
        } else {
            double re = -b / (2.0 * a), im = std::sqrt(-disc) / (2.0 * a);
            raw.push_back(Complex(re, im));
            raw.push_back(Complex(re, -im));
        }
    } else if (n >= 3) {
        raw = aberth(c, opts);
    }

    // cluster; widen the radius when the multiplicity count disagrees with
    // the approximate GCD of (p, p')
    int gcd_deg = p.degree() > 1 ? approx_gcd_degree(p, p.derivative(), 1e-8) : 0;
    double radius = opts.cluster_radius;
    std::vector<RootCluster> clusters = cluster_roots(raw, radius);
    for (int attempt = 0; attempt < 3 && total_multiplicity_excess(clusters) + (zeros_at_origin > 0 ? zeros_at_origin - 1 : 0) < gcd_deg; ++attempt) {
        radius *= 10.0;
        clusters = cluster_roots(raw, radius);
    }
    conjugate_closure(clusters, radius);
    polish_clusters(p, clusters, radius);

    if (zeros_at_origin > 0)
        clusters.push_back({Complex(0.0, 0.0), zeros_at_origin});

    std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.root.real() != b.root.real())
            return a.root.real() > b.root.real();
        return a.root.imag() < b.root.imag();
    });
    return clusters;
}

std::vector<RootCluster> poly_roots(const RealPoly& p, double tol) {
    RootFindOptions opts;
    opts.tol = tol;
    return poly_roots(p, opts);
}

} // namespace simstab
