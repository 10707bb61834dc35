#include "qgeo/lmg_exact.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

namespace qgeo::lmg {

namespace {

void check_j(double j) {
    if (!(j >= 0.5) || std::abs(2.0 * j - std::round(2.0 * j)) > 1e-9)
        throw DomainViolation("LMG exact: j must be a half-integer >= 1/2, got " +
                              std::to_string(j));
}

} // namespace

Eigen::MatrixXd SpinMatrices::jx() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) {
        m(k + 1, k) = 0.5 * jp_abs(k);
        m(k, k + 1) = 0.5 * jp_abs(k);
    }
    return m;
}

Eigen::MatrixXd SpinMatrices::jx_sq() const {
    // (Jx^2)_{kk} = (c_{k-1}^2 + c_k^2)/4, (Jx^2)_{k+2,k} = c_k c_{k+1}/4
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        double s = 0.0;
        if (k > 0) s += jp_abs(k - 1) * jp_abs(k - 1);
        if (k < dim - 1) s += jp_abs(k) * jp_abs(k);
        m(k, k) = 0.25 * s;
    }
    for (int k = 0; k + 2 < dim; ++k) {
        double c = 0.25 * jp_abs(k) * jp_abs(k + 1);
        m(k + 2, k) = c;
        m(k, k + 2) = c;
    }
    return m;
}

Eigen::MatrixXd SpinMatrices::jy_sq() const {
    // same diagonal as Jx^2, opposite sign two steps off the diagonal
    Eigen::MatrixXd m = jx_sq();
    for (int k = 0; k + 2 < dim; ++k) {
        m(k + 2, k) = -m(k + 2, k);
        m(k, k + 2) = -m(k, k + 2);
    }
    return m;
}

SpinMatrices make_spin_matrices(double j) {
    check_j(j);
    SpinMatrices s;
    s.j = j;
    s.dim = static_cast<int>(std::lround(2.0 * j)) + 1;
    s.jz.resize(s.dim);
    s.jp_abs.resize(s.dim - 1);
    for (int k = 0; k < s.dim; ++k) s.jz(k) = -j + k;
    for (int k = 0; k + 1 < s.dim; ++k) {
        double m = -j + k;
        s.jp_abs(k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    return s;
}

Eigen::MatrixXd build_hamiltonian(double j, double h, double gamma) {
    SpinMatrices s = make_spin_matrices(j);
    Eigen::MatrixXd H = (-1.0 / j) * (s.jx_sq() + gamma * s.jy_sq());
    for (int k = 0; k < s.dim; ++k) H(k, k) += -2.0 * h * s.jz(k);
    return H;
}

namespace {

void fix_signs(Eigen::MatrixXd& V) {
    for (int c = 0; c < V.cols(); ++c) {
        int imax = 0;
        double amax = -1.0;
        for (int r = 0; r < V.rows(); ++r) {
            double a = std::abs(V(r, c));
            if (a > amax) { amax = a; imax = r; }
        }
        if (V(imax, c) < 0.0) V.col(c) = -V.col(c);
    }
}

} // namespace

Spectrum diagonalize(const Eigen::MatrixXd& H) {
    if (H.rows() != H.cols()) throw SolverFailure("diagonalize: matrix not square");
    const int n = static_cast<int>(H.rows());
    Spectrum s;
    s.eigenvectors = H;
    s.eigenvalues.resize(n);
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, s.eigenvectors.data(), n,
                              s.eigenvalues.data());
    if (info != 0)
        throw SolverFailure("dsyevd failed with info = " + std::to_string(info) +
                            " on a " + std::to_string(n) + "x" + std::to_string(n) +
                            " matrix");
    fix_signs(s.eigenvectors);
    return s;
}

Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& H) {
    if (H.rows() != H.cols()) throw SolverFailure("eigenvalues_only: matrix not square");
    const int n = static_cast<int>(H.rows());
    Eigen::MatrixXd work = H;
    Eigen::VectorXd w(n);
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, w.data());
    if (info != 0)
        throw SolverFailure("dsyevd (values only) failed with info = " + std::to_string(info) +
                            " on a " + std::to_string(n) + "x" + std::to_string(n) +
                            " matrix");
    return w;
}

DeformationOps make_deformation_ops(const SpinMatrices& s) {
    DeformationOps ops;
    ops.o1 = Eigen::MatrixXd::Zero(s.dim, s.dim);
    for (int k = 0; k < s.dim; ++k) ops.o1(k, k) = -2.0 * s.jz(k);
    ops.o2 = (-1.0 / s.j) * s.jy_sq();
    return ops;
}

ParityBlocks parity_blocks(double j) {
    check_j(j);
    const int dim = static_cast<int>(std::lround(2.0 * j)) + 1;
    ParityBlocks b;
    for (int k = 0; k < dim; ++k) ((k % 2 == 0) ? b.even : b.odd).push_back(k);
    return b;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& M, const std::vector<int>& idx) {
    const int n = static_cast<int>(idx.size());
    Eigen::MatrixXd out(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) out(r, c) = M(idx[r], idx[c]);
    return out;
}

QmtResult qmt_perturbative(const Spectrum& s, const DeformationOps& ops,
                           const QmtOptions& opts) {
    const int n = static_cast<int>(s.eigenvalues.size());
    if (n < 1) throw DegenerateGroundState("qmt_perturbative: empty spectrum");
    const double h_norm =
        std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(n - 1)));
    if (n == 1)  // no excited states: the sum is empty and the tensor vanishes
        return {MetricTensor2D{}, std::numeric_limits<double>::infinity(), h_norm, false};
    const double gap = s.eigenvalues(1) - s.eigenvalues(0);
    if (!(gap > opts.gap_min_rel * h_norm))
        throw DegenerateGroundState("qmt_perturbative: ground state gap " +
                                    std::to_string(gap) + " below threshold " +
                                    std::to_string(opts.gap_min_rel * h_norm));

    const Eigen::VectorXd v0 = s.eigenvectors.col(0);
    Eigen::VectorXd w1 = s.eigenvectors.transpose() * (ops.o1 * v0);
    Eigen::VectorXd w2 = s.eigenvectors.transpose() * (ops.o2 * v0);
    MetricTensor2D g;
    for (int k = 1; k < n; ++k) {
        const double de = s.eigenvalues(k) - s.eigenvalues(0);
        const double a = w1(k) / de, b = w2(k) / de;
        g.g11 += a * a;
        g.g12 += a * b;
        g.g22 += b * b;
    }
    return {g, gap, h_norm, gap < opts.gap_warn_rel * h_norm};
}

namespace {

struct BlockedGround {
    Spectrum ground_block;           // spectrum of the block holding the ground state
    std::vector<int> ground_idx;     // basis indices of that block
    double e0 = 0.0;                 // global ground energy
    double global_gap = 0.0;         // E1 - E0 over the merged spectrum
    double h_norm = 0.0;
};

BlockedGround blocked_ground_state(const Eigen::MatrixXd& H, double j) {
    const ParityBlocks blocks = parity_blocks(j);
    Spectrum s_even = diagonalize(submatrix(H, blocks.even));
    Eigen::VectorXd other;  // eigenvalues of the block not holding the ground state
    if (!blocks.odd.empty()) other = eigenvalues_only(submatrix(H, blocks.odd));

    BlockedGround out;
    if (blocks.odd.empty() || s_even.eigenvalues(0) <= other(0)) {
        out.ground_block = std::move(s_even);
        out.ground_idx = blocks.even;
    } else {
        out.ground_block = diagonalize(submatrix(H, blocks.odd));
        out.ground_idx = blocks.odd;
        other = s_even.eigenvalues;
    }
    out.e0 = out.ground_block.eigenvalues(0);
    const auto& gbe = out.ground_block.eigenvalues;
    double second = gbe.size() > 1 ? gbe(1) : std::numeric_limits<double>::infinity();
    double norm = std::max(std::abs(gbe(0)), std::abs(gbe(gbe.size() - 1)));
    if (other.size() > 0) {
        second = std::min(second, other(0));
        norm = std::max({norm, std::abs(other(0)), std::abs(other(other.size() - 1))});
    }
    out.global_gap = second - out.e0;
    out.h_norm = norm;
    return out;
}

} // namespace

QmtResult exact_qmt(double j, double h, double gamma, const QmtOptions& opts) {
    const SpinMatrices s = make_spin_matrices(j);
    const Eigen::MatrixXd H = build_hamiltonian(j, h, gamma);
    const BlockedGround bg = blocked_ground_state(H, j);
    const DeformationOps ops = make_deformation_ops(s);
    DeformationOps block_ops{submatrix(ops.o1, bg.ground_idx), submatrix(ops.o2, bg.ground_idx)};

    // The formula's gap condition applies within the ground block; the global
    // gap only drives the quasi-degeneracy flag.
    QmtOptions block_opts = opts;
    QmtResult r = qmt_perturbative(bg.ground_block, block_ops, block_opts);
    r.gap = bg.global_gap;
    r.h_norm = bg.h_norm;
    r.near_degenerate = bg.global_gap < opts.gap_warn_rel * bg.h_norm;
    return r;
}

namespace {

struct GroundVector {
    Eigen::VectorXd full;   // ground eigenvector embedded in the full basis
    double global_gap = 0.0;
    double h_norm = 0.0;
    double block_gap = 0.0;
};

GroundVector ground_vector(double j, double h, double gamma) {
    const Eigen::MatrixXd H = build_hamiltonian(j, h, gamma);
    const BlockedGround bg = blocked_ground_state(H, j);
    GroundVector gv;
    gv.full = Eigen::VectorXd::Zero(H.rows());
    for (std::size_t k = 0; k < bg.ground_idx.size(); ++k)
        gv.full(bg.ground_idx[k]) = bg.ground_block.eigenvectors(static_cast<int>(k), 0);
    gv.global_gap = bg.global_gap;
    gv.h_norm = bg.h_norm;
    gv.block_gap = bg.ground_block.eigenvalues.size() > 1
                       ? bg.ground_block.eigenvalues(1) - bg.ground_block.eigenvalues(0)
                       : std::numeric_limits<double>::infinity();
    return gv;
}

} // namespace

QmtResult fidelity_oracle(double j, ParameterPoint x, double delta,
                          const FidelityOptions& opts) {
    if (!(delta > 0.0)) throw DomainViolation("fidelity_oracle: delta must be positive");

    const ParameterPoint probes[6] = {
        {x.x1 + delta, x.x2}, {x.x1 - delta, x.x2},
        {x.x1, x.x2 + delta}, {x.x1, x.x2 - delta},
        {x.x1 + delta, x.x2 + delta}, {x.x1 - delta, x.x2 - delta}};

    const GroundVector center = ground_vector(j, x.x1, x.x2);
    double min_gap = center.global_gap;
    double h_norm = center.h_norm;
    bool warn = center.global_gap < opts.gap.gap_warn_rel * center.h_norm;
    if (!(center.block_gap > opts.gap.gap_min_rel * center.h_norm))
        throw ProbeDegenerate("fidelity_oracle: degenerate ground state at the center point");

    double F[6];
    for (int k = 0; k < 6; ++k) {
        const GroundVector gv = ground_vector(j, probes[k].x1, probes[k].x2);
        if (!(gv.block_gap > opts.gap.gap_min_rel * gv.h_norm))
            throw ProbeDegenerate("fidelity_oracle: degenerate ground state at probe " +
                                  std::to_string(k));
        min_gap = std::min(min_gap, gv.global_gap);
        h_norm = std::max(h_norm, gv.h_norm);
        warn = warn || gv.global_gap < opts.gap.gap_warn_rel * gv.h_norm;
        F[k] = std::abs(center.full.dot(gv.full));
        if (1.0 - F[k] > opts.quad_check)
            throw DeltaTooLarge("fidelity_oracle: 1 - F = " + std::to_string(1.0 - F[k]) +
                                " at probe " + std::to_string(k) +
                                "; reduce delta to stay in the quadratic regime");
    }

    const double inv_d2 = 1.0 / (delta * delta);
    MetricTensor2D g;
    g.g11 = (2.0 - F[0] - F[1]) * inv_d2;
    g.g22 = (2.0 - F[2] - F[3]) * inv_d2;
    const double diag = (2.0 - F[4] - F[5]) * inv_d2;
    g.g12 = 0.5 * (diag - g.g11 - g.g22);
    return {g, min_gap, h_norm, warn};
}

MetricField exact_qmt_field(double j, const QmtOptions& opts) {
    struct Cache {
        std::mutex mutex;
        std::map<std::pair<std::uint64_t, std::uint64_t>, MetricTensor2D> map;
    };
    auto cache = std::make_shared<Cache>();

    MetricField f;
    f.evaluator = [j, opts, cache](ParameterPoint p) {
        std::pair<std::uint64_t, std::uint64_t> key;
        std::memcpy(&key.first, &p.x1, sizeof key.first);
        std::memcpy(&key.second, &p.x2, sizeof key.second);
        {
            std::lock_guard<std::mutex> lock(cache->mutex);
            auto it = cache->map.find(key);
            if (it != cache->map.end()) return it->second;
        }
        MetricTensor2D g = exact_qmt(j, p.x1, p.x2, opts).g;
        {
            std::lock_guard<std::mutex> lock(cache->mutex);
            cache->map.emplace(key, g);
        }
        return g;
    };
    f.domain = [](ParameterPoint p) {
        return p.x1 >= 0.0 && p.x2 > -1.0 && p.x2 < 1.0;
    };
    return f;
}

} // namespace qgeo::lmg
