#include "simstab/interp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "simstab/errors.hpp"

namespace simstab {

namespace {

using C = std::complex<double>;

// force tiny imaginary parts of jets at (numerically) real nodes to zero
void realify(InterpNode& node) {
    if (std::abs(node.z.imag()) > 1e-12 * (1.0 + std::abs(node.z)))
        return;
    node.z = C(node.z.real(), 0.0);
    if (!node.w.is_real(1e-8))
        throw SolverError("interpolation jet at a real node has a significant imaginary part");
    for (auto& c : node.w.coeffs)
        c = C(c.real(), 0.0);
    node.w.center = node.z;
}

} // namespace

InterpProblem to_disc_problem(const StabilizationProblem& sp) {
    InterpProblem ip;
    MobiusMap s_to_z = MobiusMap::disc_from_rhp();
    MobiusMap z_to_s = MobiusMap::rhp_from_disc();
    int total = 0;
    for (const auto& rc : sp.constraints) {
        InterpNode node;
        node.z = s_to_z(rc.node);
        node.order = rc.order;
        if (std::abs(node.z) >= 1.0 - 1e-8) {
            std::ostringstream os;
            os << "interpolation node on the unit circle (|z| = " << std::abs(node.z)
               << "): boundary data unsupported";
            throw InfeasibleError(os.str());
        }
        node.w = jet_compose_mobius(jet_sqrt(rc.target), z_to_s, node.z);
        realify(node);
        total += rc.order;
        ip.nodes.push_back(std::move(node));
    }
    ip.n = total - 1;
    ip.transcript = NormalizationTranscript{};
    ip.normalized = false;
    return ip;
}

InterpProblem normalize(const InterpProblem& ip) {
    // anchor: real node with the smallest signed z (transport order of the
    // descending eta zeros)
    int anchor = -1;
    for (size_t i = 0; i < ip.nodes.size(); ++i) {
        if (ip.nodes[i].z.imag() != 0.0)
            continue;
        if (anchor < 0 || ip.nodes[i].z.real() < ip.nodes[static_cast<size_t>(anchor)].z.real())
            anchor = static_cast<int>(i);
    }
    if (anchor < 0)
        throw InfeasibleError(
            "normalize: no real interpolation node; the normalization f(0) = 1/2 is undefined "
            "for conjugate-only data");

    double alpha = ip.nodes[static_cast<size_t>(anchor)].z.real();
    double w0 = ip.nodes[static_cast<size_t>(anchor)].w.value().real();
    if (w0 <= 0.0)
        throw DomainError("normalize: anchor value is not positive (square-root lift broken)");
    double gamma = 1.0 / (2.0 * w0);

    MobiusMap phi = MobiusMap::disc_automorphism(alpha);
    MobiusMap phi_inv = phi.inverse(); // (zeta + alpha)/(1 + alpha zeta)

    InterpProblem out;
    out.n = ip.n;
    out.transcript.alpha = alpha;
    out.transcript.gamma = gamma;
    out.transcript.s_to_z = ip.transcript.s_to_z;
    out.normalized = true;
    for (size_t i = 0; i < ip.nodes.size(); ++i) {
        InterpNode node;
        node.order = ip.nodes[i].order;
        if (static_cast<int>(i) == anchor) {
            node.z = 0.0;
            node.w = jet_scale(jet_compose_mobius(ip.nodes[i].w, phi_inv, 0.0), gamma);
            node.w.coeffs[0] = 0.5; // exact by construction of gamma
        } else {
            node.z = phi(ip.nodes[i].z);
            node.w = jet_scale(jet_compose_mobius(ip.nodes[i].w, phi_inv, node.z), gamma);
        }
        realify(node);
        out.nodes.push_back(std::move(node));
    }
    return out;
}

PickResult pick_test(const InterpProblem& ip) {
    // data sanity: distinct nodes, conjugate closure
    for (size_t i = 0; i < ip.nodes.size(); ++i)
        for (size_t j = i + 1; j < ip.nodes.size(); ++j)
            if (std::abs(ip.nodes[i].z - ip.nodes[j].z) <= 1e-12 * (1.0 + std::abs(ip.nodes[i].z)))
                throw DomainError("pick_test: interpolation nodes are not distinct");
    for (const auto& node : ip.nodes) {
        if (std::abs(node.z.imag()) <= 1e-12)
            continue;
        bool found = false;
        for (const auto& other : ip.nodes) {
            if (std::abs(other.z - std::conj(node.z)) > 1e-9 * (1.0 + std::abs(node.z)))
                continue;
            if (other.order != node.order)
                break;
            bool jets_match = true;
            for (int k = 0; k < node.order; ++k)
                if (std::abs(other.w.coeffs[static_cast<size_t>(k)] -
                             std::conj(node.w.coeffs[static_cast<size_t>(k)])) >
                    1e-8 * (1.0 + std::abs(node.w.coeffs[static_cast<size_t>(k)])))
                    jets_match = false;
            found = jets_match;
            break;
        }
        if (!found)
            throw DomainError("pick_test: data is not conjugate-closed");
    }

    int N = 0;
    for (const auto& node : ip.nodes)
        N += node.order;
    Eigen::MatrixXcd P(N, N);
    int row = 0;
    for (const auto& nj : ip.nodes) {
        int col = 0;
        for (const auto& nl : ip.nodes) {
            // bivariate Taylor of K(z_j + u, z_l + v) in (u, conj v):
            //   numerator  sum_k w_jk u^k + sum_i conj(w_li) vbar^i
            //   denominator (1 - z_j conj z_l) - conj(z_l) u - z_j vbar - u vbar
            int mj = nj.order, ml = nl.order;
            Eigen::MatrixXcd K(mj, ml), Nm = Eigen::MatrixXcd::Zero(mj, ml);
            for (int k = 0; k < mj; ++k)
                Nm(k, 0) += nj.w.coeffs[static_cast<size_t>(k)];
            for (int i = 0; i < ml; ++i)
                Nm(0, i) += std::conj(nl.w.coeffs[static_cast<size_t>(i)]);
            C d00 = 1.0 - nj.z * std::conj(nl.z);
            C d10 = -std::conj(nl.z);
            C d01 = -nj.z;
            C d11 = -1.0;
            for (int k = 0; k < mj; ++k) {
                for (int i = 0; i < ml; ++i) {
                    C acc = Nm(k, i);
                    if (k >= 1)
                        acc -= d10 * K(k - 1, i);
                    if (i >= 1)
                        acc -= d01 * K(k, i - 1);
                    if (k >= 1 && i >= 1)
                        acc -= d11 * K(k - 1, i - 1);
                    K(k, i) = acc / d00;
                }
            }
            P.block(row, col, mj, ml) = K;
            col += ml;
        }
        row += nj.order;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P);
    PickResult res;
    res.min_eigenvalue = es.eigenvalues().minCoeff();
    res.trace = P.trace().real();
    res.solvable = res.min_eigenvalue > 1e-10 * std::max(res.trace, 0.0);
    return res;
}

} // namespace simstab
