#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qgeo/geometry.hpp"

namespace qgeo::lmg {

/// Collective spin operators in the Jz eigenbasis |j,m>, m = -j..j ascending.
/// Everything is kept real: Jy itself is never materialized, only the real
/// symmetric Jy^2 = -((J+ - J-)/2)^2.
struct SpinMatrices {
    double j = 0.5;
    int dim = 2;
    Eigen::VectorXd jz;      // diagonal entries m
    Eigen::VectorXd jp_abs;  // |<m+1|J+|m>| = sqrt(j(j+1) - m(m+1)), length dim-1

    Eigen::MatrixXd jx() const;
    Eigen::MatrixXd jx_sq() const;
    Eigen::MatrixXd jy_sq() const;
};

/// Requires 2j to be a nonnegative integer with j >= 1/2.
SpinMatrices make_spin_matrices(double j);

/// H = -2h Jz - (Jx^2 + gamma Jy^2)/j, real symmetric pentadiagonal.
Eigen::MatrixXd build_hamiltonian(double j, double h, double gamma);

/// Eigenvalues ascending; eigenvectors as orthonormal columns with the sign
/// fixed by making each vector's largest-magnitude component positive.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

/// Dense real-symmetric diagonalization (LAPACK dsyevd divide and conquer).
/// Throws SolverFailure with size context if the factorization does not
/// converge.
Spectrum diagonalize(const Eigen::MatrixXd& H);

/// Eigenvalues only, same backend.
Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& H);

/// Deformation operators O1 = dH/dh = -2 Jz and O2 = dH/dgamma = -Jy^2/j.
struct DeformationOps {
    Eigen::MatrixXd o1;
    Eigen::MatrixXd o2;
};

DeformationOps make_deformation_ops(const SpinMatrices& s);

/// Basis indices split by the parity (m + j) mod 2; H, O1 and O2 all preserve
/// it, so each block can be treated independently.
struct ParityBlocks {
    std::vector<int> even;
    std::vector<int> odd;
};

ParityBlocks parity_blocks(double j);

/// Extracts the principal submatrix on the given index set.
Eigen::MatrixXd submatrix(const Eigen::MatrixXd& M, const std::vector<int>& idx);

struct QmtOptions {
    double gap_min_rel = 1e-12;   // DegenerateGroundState below this (times ||H||)
    double gap_warn_rel = 1e-8;   // near-degeneracy flag below this
};

struct QmtResult {
    MetricTensor2D g;
    double gap = 0.0;       // E1 - E0 of the spectrum the flag refers to
    double h_norm = 0.0;    // spectral norm used for the thresholds
    bool near_degenerate = false;
};

/// Perturbative QMT  g_ij = sum_{n != 0} <0|Oi|n><n|Oj|0> / (E_n - E_0)^2
/// over the given spectrum. Positive semidefinite by construction.
QmtResult qmt_perturbative(const Spectrum& s, const DeformationOps& ops,
                           const QmtOptions& opts = {});

/// Production path: builds H at (h, gamma), splits into parity blocks, and sums
/// the perturbative formula inside the global ground state's block (the
/// deformation operators have no cross-block elements). The reported gap and
/// the near-degeneracy flag refer to the full spectrum, so the broken-phase
/// finite-j quasi-degeneracy is surfaced rather than hidden.
QmtResult exact_qmt(double j, double h, double gamma, const QmtOptions& opts = {});

struct FidelityOptions {
    double quad_check = 1e-4;  // DeltaTooLarge when 1 - F exceeds this at a probe
    QmtOptions gap;
};

/// Ground-state fidelity oracle: second differences of overlaps at x +- delta
/// along each axis and the diagonal give the QMT up to O(delta^2). Overlaps are
/// absolute values of eigenvector inner products, hence gauge-free.
QmtResult fidelity_oracle(double j, ParameterPoint x, double delta,
                          const FidelityOptions& opts = {});

/// Exact QMT as a metric field over (h, gamma) at fixed j, with an internal
/// point cache (results are value-identical with or without it).
MetricField exact_qmt_field(double j, const QmtOptions& opts = {});

} // namespace qgeo::lmg
