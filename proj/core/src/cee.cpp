#include "simstab/cee.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "simstab/errors.hpp"

namespace simstab {

namespace {

using C = std::complex<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// monic p(z) = z^n + v(0) z^{n-1} + ... + v(n-1)  <->  coefficient vector v
RealPoly monic_from_vec(const VectorXd& v) {
    std::vector<double> c(static_cast<size_t>(v.size()) + 1);
    c[0] = 1.0;
    for (int i = 0; i < v.size(); ++i)
        c[static_cast<size_t>(i) + 1] = v(i);
    return RealPoly(std::move(c));
}

VectorXd vec_from_monic(const RealPoly& p) {
    int n = p.degree();
    if (n >= 0 && std::abs(p.leading() - 1.0) > 1e-9)
        throw DomainError("expected a monic polynomial");
    VectorXd v(n);
    for (int i = 0; i < n; ++i)
        v(i) = p.coeff(i + 1) / p.leading();
    return v;
}

// d_k = sum_i (a_i b_{i+k} + b_i a_{i+k}), indices 0..n with a_0 = b_0 = 1;
// these are the coefficients of a(z) b(1/z) + b(z) a(1/z)
VectorXd pseudo_coeffs(const VectorXd& a, const VectorXd& b) {
    int n = static_cast<int>(a.size());
    auto at = [n](const VectorXd& v, int i) -> double {
        if (i < 0 || i > n)
            return 0.0;
        return i == 0 ? 1.0 : v(i - 1);
    };
    VectorXd d(n + 1);
    for (int k = 0; k <= n; ++k) {
        double acc = 0.0;
        for (int i = 0; i + k <= n; ++i)
            acc += at(a, i) * at(b, i + k) + at(b, i) * at(a, i + k);
        d(k) = acc;
    }
    return d;
}

// autocorrelation t_k = sum_i s_i s_{i+k} of the monic coefficient vector
VectorXd autocorr(const VectorXd& s) {
    int n = static_cast<int>(s.size());
    auto at = [n](const VectorXd& v, int i) -> double {
        if (i < 0 || i > n)
            return 0.0;
        return i == 0 ? 1.0 : v(i - 1);
    };
    VectorXd t(n + 1);
    for (int k = 0; k <= n; ++k) {
        double acc = 0.0;
        for (int i = 0; i + k <= n; ++i)
            acc += at(s, i) * at(s, i + k);
        t(k) = acc;
    }
    return t;
}

// reversed polynomial rev_p(z) = 1 + p_1 z + ... + p_n z^n as RealPoly
RealPoly rev_poly(const VectorXd& v) {
    std::vector<double> c(static_cast<size_t>(v.size()) + 1);
    for (int i = 0; i < v.size(); ++i)
        c[static_cast<size_t>(v.size() - 1 - i)] = v(i);
    c.back() = 1.0;
    return RealPoly(std::move(c));
}

std::vector<C> series_inv(const std::vector<C>& a) {
    size_t m = a.size();
    std::vector<C> out(m, 0.0);
    out[0] = 1.0 / a[0];
    for (size_t k = 1; k < m; ++k) {
        C acc = 0.0;
        for (size_t i = 1; i <= k; ++i)
            acc += a[i] * out[k - i];
        out[k] = -acc * out[0];
    }
    return out;
}

std::vector<C> series_mul(const std::vector<C>& a, const std::vector<C>& b) {
    size_t m = a.size();
    std::vector<C> out(m, 0.0);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; i + j < m; ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// jet of f(z) = rev_b(z)/(2 rev_a(z)) at z0, with per-unknown derivatives
struct FJetWorkspace {
    std::vector<C> F;                   // jet of f
    std::vector<std::vector<C>> dFda;   // n entries
    std::vector<std::vector<C>> dFdb;
};

FJetWorkspace f_jet_with_grad(const VectorXd& a, const VectorXd& b, C z0, int order) {
    int n = static_cast<int>(a.size());
    RealPoly ra = rev_poly(a), rb = rev_poly(b);
    auto A = ra.taylor(z0, order);
    auto B = rb.taylor(z0, order);
    auto invA = series_inv(A);
    FJetWorkspace w;
    w.F = series_mul(B, invA);
    for (auto& c : w.F)
        c *= 0.5;
    // jets of z^q at z0 (binomial expansion)
    std::vector<std::vector<C>> zq(static_cast<size_t>(n));
    for (int q = 1; q <= n; ++q) {
        std::vector<C> t(static_cast<size_t>(order), 0.0);
        if (z0 == 0.0) {
            if (q < order)
                t[static_cast<size_t>(q)] = 1.0;
        } else {
            double binom = 1.0;
            C pw = std::pow(z0, q);
            for (int j = 0; j <= std::min(q, order - 1); ++j) {
                t[static_cast<size_t>(j)] = binom * pw;
                binom = binom * (q - j) / (j + 1);
                pw /= z0;
            }
        }
        zq[static_cast<size_t>(q - 1)] = std::move(t);
    }
    w.dFda.resize(static_cast<size_t>(n));
    w.dFdb.resize(static_cast<size_t>(n));
    for (int q = 1; q <= n; ++q) {
        auto zi = series_mul(zq[static_cast<size_t>(q - 1)], invA);
        auto dfb = zi;
        for (auto& c : dfb)
            c *= 0.5;
        w.dFdb[static_cast<size_t>(q - 1)] = std::move(dfb);
        auto dfa = series_mul(zi, w.F);
        for (auto& c : dfa)
            c = -c;
        w.dFda[static_cast<size_t>(q - 1)] = std::move(dfa);
    }
    return w;
}

MatrixXd companion_gamma(const VectorXd& s) {
    int n = static_cast<int>(s.size());
    MatrixXd G = MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i)
        G(i, i + 1) = 1.0;
    for (int i = 0; i < n; ++i)
        G(i, 0) -= s(i);
    return G;
}

// unique solution of P = G P G' + Q for Schur-stable G (dense Kronecker solve)
MatrixXd solve_stein(const MatrixXd& G, const MatrixXd& Q) {
    int n = static_cast<int>(G.rows());
    if (n == 0)
        return MatrixXd(0, 0);
    MatrixXd A = MatrixXd::Identity(n * n, n * n);
    // A -= kron(G, G), column-major vec convention: vec(G P G') = (G (x) G) vec(P)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    A(j * n + i, l * n + k) -= G(i, k) * G(j, l);
    Eigen::Map<const VectorXd> q(Q.data(), n * n);
    VectorXd p = A.colPivHouseholderQr().solve(q);
    MatrixXd P = Eigen::Map<const MatrixXd>(p.data(), n, n);
    return 0.5 * (P + P.transpose());
}

int rank_by_svd(const MatrixXd& P) {
    if (P.rows() == 0)
        return 0;
    Eigen::JacobiSVD<MatrixXd> svd(P);
    double top = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    if (top <= 0.0)
        return 0;
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-8 * top)
            ++r;
    return r;
}

// representative view of a conjugate-closed node set
struct RepNode {
    C z;
    int order;
    std::vector<C> target;
    bool is_complex; // one of a conjugate pair
    bool at_origin;
};

std::vector<RepNode> representatives(const InterpProblem& ip) {
    std::vector<RepNode> reps;
    for (const auto& node : ip.nodes) {
        if (node.z.imag() < 0.0)
            continue; // conjugate partner carries the data
        RepNode r;
        r.z = node.z;
        r.order = node.order;
        r.target = node.w.coeffs;
        r.is_complex = node.z.imag() > 0.0;
        r.at_origin = std::abs(node.z) < 1e-13;
        reps.push_back(std::move(r));
    }
    return reps;
}

struct GeneralSystem {
    int n;
    VectorXd sigma;
    VectorXd sig_auto;
    std::vector<RepNode> reps;
    int n_equations;

    void residual_and_jacobian(const VectorXd& x, const std::vector<std::vector<C>>& data,
                               VectorXd& r, MatrixXd* J) const {
        VectorXd a = x.segment(0, n), b = x.segment(n, n);
        double rho = x(2 * n);
        r.resize(n_equations);
        if (J)
            J->setZero(n_equations, 2 * n + 1);
        VectorXd d = pseudo_coeffs(a, b);
        auto at = [this](const VectorXd& v, int i) -> double {
            if (i < 0 || i > n)
                return 0.0;
            return i == 0 ? 1.0 : v(i - 1);
        };
        int row = 0;
        for (int k = 0; k <= n; ++k, ++row) {
            r(row) = d(k) - 2.0 * rho * rho * sig_auto(k);
            if (J) {
                for (int m = 1; m <= n; ++m) {
                    (*J)(row, m - 1) = at(b, m + k) + at(b, m - k);
                    (*J)(row, n + m - 1) = at(a, m + k) + at(a, m - k);
                }
                (*J)(row, 2 * n) = -4.0 * rho * sig_auto(k);
            }
        }
        for (size_t ri = 0; ri < reps.size(); ++ri) {
            const auto& rep = reps[ri];
            auto w = f_jet_with_grad(a, b, rep.z, rep.order);
            int k0 = rep.at_origin ? 1 : 0;
            for (int k = k0; k < rep.order; ++k) {
                C diff = w.F[static_cast<size_t>(k)] - data[ri][static_cast<size_t>(k)];
                r(row) = diff.real();
                if (J)
                    for (int m = 1; m <= n; ++m) {
                        (*J)(row, m - 1) = w.dFda[static_cast<size_t>(m - 1)][static_cast<size_t>(k)].real();
                        (*J)(row, n + m - 1) = w.dFdb[static_cast<size_t>(m - 1)][static_cast<size_t>(k)].real();
                    }
                ++row;
                if (rep.is_complex) {
                    r(row) = diff.imag();
                    if (J)
                        for (int m = 1; m <= n; ++m) {
                            (*J)(row, m - 1) =
                                w.dFda[static_cast<size_t>(m - 1)][static_cast<size_t>(k)].imag();
                            (*J)(row, n + m - 1) =
                                w.dFdb[static_cast<size_t>(m - 1)][static_cast<size_t>(k)].imag();
                        }
                    ++row;
                }
            }
        }
    }

    bool newton(VectorXd& x, const std::vector<std::vector<C>>& data, double tol,
                int max_iter) const {
        VectorXd r;
        MatrixXd J;
        for (int it = 0; it < max_iter; ++it) {
            residual_and_jacobian(x, data, r, &J);
            if (r.lpNorm<Eigen::Infinity>() < tol)
                return true;
            VectorXd dx = J.colPivHouseholderQr().solve(r);
            if (!dx.allFinite())
                return false;
            x -= dx;
            if (x(2 * n) < 0.0)
                x(2 * n) = -x(2 * n);
        }
        residual_and_jacobian(x, data, r, nullptr);
        return r.lpNorm<Eigen::Infinity>() < tol;
    }
};

void check_schur(const RealPoly& p, const char* name) {
    if (p.degree() == 0)
        return;
    auto st = stability_test(p, StabilityRegion::OpenUnitDisc, 0.0);
    if (!st.stable) {
        std::ostringstream os;
        os << "solver produced a non-Schur " << name
           << " polynomial (infeasible or boundary-degenerate data); witness root ("
           << st.witnesses[0].real() << ", " << st.witnesses[0].imag() << ")";
        throw InfeasibleError(os.str());
    }
}

MatrixXd recover_P(const VectorXd& a, const VectorXd& b, const VectorXd& sigma) {
    int n = static_cast<int>(a.size());
    if (n == 0)
        return MatrixXd(0, 0);
    VectorXd g = 0.5 * (b - a);
    VectorXd v = 0.5 * (a + b) - sigma; // = Gamma P h at the solution
    MatrixXd G = companion_gamma(sigma);
    MatrixXd Q = g * g.transpose() - v * v.transpose();
    return solve_stein(G, Q);
}

CeeSolution finalize_solution(const VectorXd& a, const VectorXd& b, double rho,
                              const SigmaChoice& sigma, const InterpProblem& ip,
                              const MatrixXd* P_iterated = nullptr) {
    CeeSolution sol;
    sol.a = monic_from_vec(a);
    sol.b = monic_from_vec(b);
    sol.rho = rho;
    sol.sigma = sigma;
    check_schur(sol.a, "a");
    check_schur(sol.b, "b");
    sol.P = P_iterated ? *P_iterated : recover_P(a, b, sigma.vec());
    if (sol.P.rows() > 0) {
        double hPh = sol.P(0, 0);
        if (hPh >= 1.0)
            throw SolverError("recovered P violates h'Ph < 1");
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(sol.P);
        if (es.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, sol.P.norm()))
            throw SolverError("recovered P is not positive semidefinite");
    }
    sol.rank_P = rank_by_svd(sol.P);
    sol.residuals = verify_solution(sol, ip);
    return sol;
}

InterpProblem origin_problem(const VectorXd& c) {
    InterpProblem ip;
    InterpNode node;
    node.z = 0.0;
    node.order = static_cast<int>(c.size()) + 1;
    std::vector<C> w(static_cast<size_t>(node.order));
    w[0] = 0.5;
    for (int i = 0; i < c.size(); ++i)
        w[static_cast<size_t>(i) + 1] = c(i);
    node.w = Jet(0.0, std::move(w));
    ip.n = node.order - 1;
    ip.normalized = true;
    ip.nodes.push_back(std::move(node));
    return ip;
}

} // namespace

SigmaChoice SigmaChoice::from_poly(RealPoly p) {
    if (p.is_zero())
        throw DomainError("sigma must be a nonzero monic polynomial");
    if (std::abs(p.leading() - 1.0) > 1e-12)
        p = p * (1.0 / p.leading());
    if (p.degree() > 0) {
        auto st = stability_test(p, StabilityRegion::OpenUnitDisc, 0.0);
        if (!st.stable) {
            std::ostringstream os;
            os << "sigma is not Schur: root at (" << st.witnesses[0].real() << ", "
               << st.witnesses[0].imag() << ")";
            throw DomainError(os.str());
        }
    }
    return SigmaChoice{std::move(p)};
}

SigmaChoice SigmaChoice::from_vector(const Eigen::VectorXd& v) {
    return from_poly(monic_from_vec(v));
}

SigmaChoice SigmaChoice::from_zero(double zero, int n) {
    if (std::abs(zero) >= 1.0)
        throw DomainError("sigma zero must satisfy |z0| < 1 (Schur)");
    std::vector<Complex> roots(static_cast<size_t>(n), Complex(zero, 0.0));
    return SigmaChoice{RealPoly::from_roots(roots, 1.0)};
}

SigmaChoice SigmaChoice::power_of_z(int n) { return from_zero(0.0, n); }

Eigen::VectorXd SigmaChoice::vec() const { return vec_from_monic(sigma); }

std::pair<VectorXd, MatrixXd> build_uU_origin(const VectorXd& c) {
    int n = static_cast<int>(c.size());
    MatrixXd Cm = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            Cm(i, j) = c(i - j - 1);
    MatrixXd IC = MatrixXd::Identity(n, n) + Cm;
    VectorXd u = IC.triangularView<Eigen::Lower>().solve(c);
    MatrixXd U = IC.triangularView<Eigen::Lower>().solve(Cm);
    return {u, U};
}

CeeSolution cee_solve_origin(const VectorXd& c, const SigmaChoice& sigma) {
    int n = static_cast<int>(c.size());
    if (sigma.degree() != n)
        throw DomainError("cee_solve_origin: sigma degree must equal the data dimension");
    InterpProblem ip = origin_problem(c);
    auto pick = pick_test(ip);
    if (!pick.solvable) {
        std::ostringstream os;
        os << "interpolation data infeasible: Pick matrix min eigenvalue " << pick.min_eigenvalue;
        throw InfeasibleError(os.str());
    }
    if (n == 0)
        return finalize_solution(VectorXd(0), VectorXd(0), 1.0, sigma, ip);

    auto [u, U] = build_uU_origin(c);
    VectorXd svec = sigma.vec();
    MatrixXd G = companion_gamma(svec);
    VectorXd h = VectorXd::Zero(n);
    h(0) = 1.0;

    auto gP = [&](const MatrixXd& P) -> VectorXd { return u + U * svec + U * (G * P * h); };
    auto rhs = [&](const MatrixXd& P) -> MatrixXd {
        VectorXd g = gP(P);
        MatrixXd Ph = P * h;
        return G * (P - Ph * Ph.transpose()) * G.transpose() + g * g.transpose();
    };

    MatrixXd P = MatrixXd::Zero(n, n);
    double theta = 0.5;
    double res = std::numeric_limits<double>::infinity();
    int it = 0;
    const int fp_cap = 20000;
    for (; it < fp_cap; ++it) {
        MatrixXd R = rhs(P);
        res = (R - P).norm() / (1.0 + P.norm());
        if (res < 1e-4)
            break;
        MatrixXd Pn = (1.0 - theta) * P + theta * R;
        if (Pn(0, 0) >= 1.0) {
            theta *= 0.5;
            if (theta < 1e-4)
                throw SolverError("cee_solve_origin: damping underflow (h'Ph approaching 1)");
            continue;
        }
        P = 0.5 * (Pn + Pn.transpose());
    }
    if (res >= 1e-4) {
        std::ostringstream os;
        os << "cee_solve_origin: fixed-point stage stalled at residual " << res << " after "
           << it << " iterations";
        throw SolverError(os.str());
    }

    // Newton finish on the symmetric unknowns
    int nsym = n * (n + 1) / 2;
    auto to_vech = [&](const MatrixXd& M) {
        VectorXd v(nsym);
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                v(k++) = M(i, j);
        return v;
    };
    auto from_vech = [&](const VectorXd& v) {
        MatrixXd M(n, n);
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                M(i, j) = v(k);
                M(j, i) = v(k);
                ++k;
            }
        return M;
    };
    for (int newton_it = 0; newton_it < 50; ++newton_it) {
        MatrixXd Gres = rhs(P) - P;
        res = Gres.norm() / (1.0 + P.norm());
        if (res < 1e-13)
            break;
        VectorXd g = gP(P);
        MatrixXd J(nsym, nsym);
        int col = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j, ++col) {
                MatrixXd E = MatrixXd::Zero(n, n);
                E(i, j) = 1.0;
                E(j, i) = 1.0;
                MatrixXd Ph = P * h;
                MatrixXd Eh = E * h;
                VectorXd dg = U * (G * Eh);
                MatrixXd dR = G * (E - Eh * Ph.transpose() - Ph * Eh.transpose()) * G.transpose() +
                              dg * g.transpose() + g * dg.transpose() - E;
                J.col(col) = to_vech(dR);
            }
        VectorXd step = J.colPivHouseholderQr().solve(to_vech(Gres));
        if (!step.allFinite())
            throw SolverError("cee_solve_origin: Newton step failed");
        P = from_vech(to_vech(P) - step);
    }
    MatrixXd Gres = rhs(P) - P;
    res = Gres.norm() / (1.0 + P.norm());
    if (res > 1e-10) {
        std::ostringstream os;
        os << "cee_solve_origin: final CEE residual " << res << " above tolerance";
        throw SolverError(os.str());
    }

    VectorXd core = G * P * h + svec;
    VectorXd a = (MatrixXd::Identity(n, n) - U) * core - u;
    VectorXd b = (MatrixXd::Identity(n, n) + U) * core + u;
    double hPh = P(0, 0);
    if (hPh >= 1.0)
        throw SolverError("cee_solve_origin: h'Ph >= 1");
    double rho = std::sqrt(1.0 - hPh);
    MatrixXd Psym = 0.5 * (P + P.transpose());
    return finalize_solution(a, b, rho, sigma, ip, &Psym);
}

CeeSolution solve_general(const InterpProblem& ip, const SigmaChoice& sigma) {
    if (!ip.normalized)
        throw DomainError("solve_general: problem must be normalized (node 0 with value 1/2)");
    auto pick = pick_test(ip);
    if (!pick.solvable) {
        std::ostringstream os;
        os << "interpolation data infeasible: Pick matrix min eigenvalue " << pick.min_eigenvalue
           << " (trace " << pick.trace << ")";
        throw InfeasibleError(os.str());
    }
    int n = ip.n;
    if (sigma.degree() != n) {
        std::ostringstream os;
        os << "sigma degree " << sigma.degree() << " does not match the problem degree n = " << n;
        throw DomainError(os.str());
    }
    if (n == 0)
        return finalize_solution(VectorXd(0), VectorXd(0), 1.0, sigma, ip);

    GeneralSystem sys;
    sys.n = n;
    sys.sigma = sigma.vec();
    sys.sig_auto = autocorr(sys.sigma);
    sys.reps = representatives(ip);
    int eq = n + 1;
    for (const auto& rep : sys.reps) {
        int rows = rep.order - (rep.at_origin ? 1 : 0);
        eq += rep.is_complex ? 2 * rows : rows;
    }
    sys.n_equations = eq;
    if (eq != 2 * n + 1) {
        std::ostringstream os;
        os << "solve_general: equation bookkeeping mismatch (" << eq << " equations for "
           << 2 * n + 1 << " unknowns); data not conjugate-closed?";
        throw DomainError(os.str());
    }

    // homotopy from the trivial data (all jets equal the constant 1/2)
    std::vector<std::vector<C>> trivial(sys.reps.size());
    for (size_t i = 0; i < sys.reps.size(); ++i) {
        trivial[i].assign(static_cast<size_t>(sys.reps[i].order), 0.0);
        trivial[i][0] = 0.5;
    }
    VectorXd x(2 * n + 1);
    x.segment(0, n) = sys.sigma;
    x.segment(n, n) = sys.sigma;
    x(2 * n) = 1.0;

    double t = 0.0, step = 0.25;
    std::vector<std::vector<C>> data(sys.reps.size());
    while (t < 1.0) {
        double tn = std::min(1.0, t + step);
        for (size_t i = 0; i < sys.reps.size(); ++i) {
            data[i].resize(static_cast<size_t>(sys.reps[i].order));
            for (int k = 0; k < sys.reps[i].order; ++k)
                data[i][static_cast<size_t>(k)] = (1.0 - tn) * trivial[i][static_cast<size_t>(k)] +
                                                  tn * sys.reps[i].target[static_cast<size_t>(k)];
        }
        VectorXd xn = x;
        if (sys.newton(xn, data, 1e-12, 50)) {
            x = xn;
            t = tn;
            step = std::min(0.25, 2.0 * step);
        } else {
            step *= 0.5;
            if (step < 1e-6) {
                std::ostringstream os;
                os << "solve_general: homotopy step underflow at t = " << t
                   << " (last good point kept; data may be near the solvability boundary)";
                throw SolverError(os.str());
            }
        }
    }

    VectorXd a = x.segment(0, n), b = x.segment(n, n);
    double rho = std::abs(x(2 * n));
    return finalize_solution(a, b, rho, sigma, ip);
}

RatFun assemble_f(const CeeSolution& sol) {
    VectorXd a = vec_from_monic(sol.a), b = vec_from_monic(sol.b);
    return RatFun::reduced(rev_poly(b) * 0.5, rev_poly(a));
}

SolveDiagnostics verify_solution(const CeeSolution& sol, const InterpProblem& ip) {
    SolveDiagnostics d;
    VectorXd a = vec_from_monic(sol.a), b = vec_from_monic(sol.b);
    VectorXd s = sol.sigma.vec();
    int n = static_cast<int>(a.size());

    VectorXd lhs = pseudo_coeffs(a, b);
    VectorXd t = autocorr(s);
    d.spectral_residual = (lhs - 2.0 * sol.rho * sol.rho * t).lpNorm<Eigen::Infinity>();

    for (const auto& node : ip.nodes) {
        auto w = f_jet_with_grad(a, b, node.z, node.order);
        for (int k = (std::abs(node.z) < 1e-13 ? 1 : 0); k < node.order; ++k)
            d.interpolation_residual =
                std::max(d.interpolation_residual,
                         std::abs(w.F[static_cast<size_t>(k)] - node.w.coeffs[static_cast<size_t>(k)]));
    }

    if (n > 0) {
        VectorXd g = 0.5 * (b - a);
        MatrixXd G = companion_gamma(s);
        VectorXd h = VectorXd::Zero(n);
        h(0) = 1.0;
        VectorXd Ph = sol.P * h;
        MatrixXd cee = G * (sol.P - Ph * Ph.transpose()) * G.transpose() + g * g.transpose() - sol.P;
        d.cee_residual = cee.norm() / (1.0 + sol.P.norm());

        MatrixXd F = companion_gamma(a);
        VectorXd w = g - F * Ph;
        double hPh = sol.P(0, 0);
        MatrixXd are = F * sol.P * F.transpose() + w * w.transpose() / (1.0 - hPh) - sol.P;
        d.are_residual = are.norm() / (1.0 + sol.P.norm());
    }

    // positivity of Re f on the 0.999 circle and the spectral-factor identity
    RealPoly ra = rev_poly(a), rb = rev_poly(b);
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 512; ++i) {
        double th = 2.0 * std::numbers::pi * i / 512;
        C z = 0.999 * C(std::cos(th), std::sin(th));
        C f = 0.5 * rb(z) / ra(z);
        margin = std::min(margin, f.real());
    }
    d.positivity_margin = margin;

    double spec_err = 0.0;
    for (int i = 0; i < 512; ++i) {
        double th = 2.0 * std::numbers::pi * i / 512;
        C z = C(std::cos(th), std::sin(th));
        C zi = 1.0 / z;
        C av = sol.a(z), ai = sol.a(zi);
        C sv = sol.sigma.sigma(z), si = sol.sigma.sigma(zi);
        C vvi = sol.rho * sol.rho * sv * si / (av * ai);
        C phi = 0.5 * rb(z) / ra(z) + 0.5 * rb(zi) / ra(zi);
        spec_err = std::max(spec_err, std::abs(vvi - phi));
    }
    d.spectral_factor_error = spec_err;
    return d;
}

std::pair<SigmaChoice, double> recover_sigma(const RealPoly& a, const RealPoly& b) {
    if (a.degree() != b.degree())
        throw DomainError("recover_sigma: a and b must have equal degree");
    VectorXd av = vec_from_monic(a), bv = vec_from_monic(b);
    int n = static_cast<int>(av.size());
    VectorXd d = pseudo_coeffs(av, bv);

    // positivity of d0 + 2 sum d_k cos(k th) on a 1024-point circle grid
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1024; ++i) {
        double th = 2.0 * std::numbers::pi * i / 1024;
        double val = d(0);
        for (int k = 1; k <= n; ++k)
            val += 2.0 * d(k) * std::cos(k * th);
        dmin = std::min(dmin, val);
    }
    if (dmin <= 0.0) {
        std::ostringstream os;
        os << "recover_sigma: pseudo-polynomial not positive on the unit circle (min " << dmin
           << ")";
        throw DomainError(os.str());
    }
    if (n == 0)
        return {SigmaChoice::power_of_z(0), std::sqrt(d(0) / 2.0)};

    // roots of z^n (a(z) b(1/z) + b(z) a(1/z)): sigma's roots are the ones
    // inside the disc, plus origin roots for the degree deficit
    std::vector<double> full(static_cast<size_t>(2 * n + 1));
    for (int i = 0; i <= 2 * n; ++i)
        full[static_cast<size_t>(i)] = d(std::abs(n - i));
    RealPoly p = RealPoly(full).trimmed(1e-12);
    int deficit = 2 * n - p.degree();
    std::vector<Complex> inside(static_cast<size_t>(deficit), Complex(0.0, 0.0));
    for (const auto& c : poly_roots(p))
        if (std::abs(c.root) < 1.0)
            for (int i = 0; i < c.multiplicity; ++i)
                inside.push_back(c.root);
    if (static_cast<int>(inside.size()) != n)
        throw DomainError("recover_sigma: spectral factorization failed to split the roots");
    SigmaChoice sig = SigmaChoice::from_poly(RealPoly::from_roots(inside, 1.0));
    VectorXd t = autocorr(sig.vec());
    double rho = std::sqrt(d(0) / (2.0 * t(0)));
    double res = (d - 2.0 * rho * rho * t).lpNorm<Eigen::Infinity>();
    if (res > 1e-6 * std::max(1.0, d.lpNorm<Eigen::Infinity>()))
        throw DomainError("recover_sigma: factorization residual above tolerance");
    return {sig, rho};
}

} // namespace simstab
