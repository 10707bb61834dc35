#pragma once

#include <array>
#include <span>
#include <vector>

#include "qgeo/dicke.hpp"
#include "qgeo/geometry.hpp"

namespace qgeo::oracle {

/// Connected correlator of two Dicke deformation functions as a trig polynomial
/// in the time difference. The correlator is even in T, so the cosine
/// coefficients carry the signal and the sine ones stay at the noise floor.
///
/// The quadratic two-mode flow produces exactly the frequencies
/// {0, 2 eps1, 2 eps2, eps1 + eps2, |eps1 - eps2|}: the first-harmonic terms
/// oscillate at twice a normal frequency and the cross term is a product
/// cos(eps1 T) cos(eps2 T). A connected correlator has no DC component, which
/// regularized_metric asserts before integrating.
struct CorrelatorSeries {
    std::vector<double> frequencies;  // ascending candidate dictionary, [0] == 0
    std::vector<double> cos_coeffs;   // one per frequency
    std::vector<double> sin_coeffs;   // one per nonzero frequency
    double fit_residual = 0.0;        // harmonic-fit residual relative to signal norm
    double signal_norm = 0.0;         // rms of the sampled correlator
};

struct OracleOptions {
    int n_angles = 256;        // quadrature points per angle, >= 64
    int n_time_samples = 48;   // Chebyshev samples, >= 2x dictionary size
    double cond_max = 1e8;     // IllConditionedProjection beyond this
    double dc_tol = 1e-8;      // DcLeakage threshold (relative to signal norm)
};

/// Chebyshev time samples on [0, pi/eps1], covering the slowest oscillation.
std::vector<double> default_time_samples(const dicke::NormalModeData& modes, int n);

/// Torus average of O_i(0) O_j(T) minus the product of the marginals, sampled
/// at each T by tensor-product quadrature over the two initial angles, then
/// least-squares projected onto the harmonic dictionary. Indices i, j are
/// 1-based (1 = d/domega, 2 = d/dlambda).
CorrelatorSeries connected_correlator(const dicke::DickeParams& p, dicke::Phase phase,
                                      const ActionAssignment& a, int i, int j,
                                      std::span<const double> t_samples, int n_angles,
                                      double cond_max = 1e8);

/// Applies the regularization (each cos(Omega T) term of coefficient c
/// contributes +c/Omega^2) and sums the series into a metric. The convention —
/// cos(Omega T) integrates to -1/Omega^2 in total, cancelling the overall minus
/// of the defining double integral — is fixed by requiring the pipeline to
/// reproduce the closed-form classical metric. Series order: (11, 12, 21, 22);
/// the off-diagonal entry is the mean of the 12 and 21 results.
MetricTensor2D regularized_metric(const std::array<CorrelatorSeries, 4>& series,
                                  double dc_tol = 1e-8);

/// Full pipeline: correlators for every index pair, then regularization.
MetricTensor2D oracle_metric(const dicke::DickeParams& p, dicke::Phase phase,
                             const ActionAssignment& a = {}, const OracleOptions& opts = {});

} // namespace qgeo::oracle
