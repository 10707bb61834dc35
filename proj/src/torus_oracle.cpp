#include "qgeo/torus_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <string>

namespace qgeo::oracle {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Deformation functions in normal-mode form:
//   O_i(t) = a1 Q1(t)^2 + a2 Q2(t)^2 + a3 Q1(t) Q2(t)
// with a1 = eps1 di eps1, a2 = eps2 di eps2, a3 = (eps2^2 - eps1^2) di alpha.
struct DeformationCoeffs {
    double a1, a2, a3;
};

DeformationCoeffs deformation_coeffs(const dicke::NormalModeData& m, int i) {
    const int k = i - 1;
    return {m.eps1 * m.grad_eps1[k], m.eps2 * m.grad_eps2[k],
            (m.eps2 * m.eps2 - m.eps1 * m.eps1) * m.grad_alpha[k]};
}

// Q_a(t) on the torus: Q_a = sqrt(2 I_a / eps_a) sin(phi_a0 + eps_a t).
struct ModeAmplitudes {
    double amp1, amp2;
};

} // namespace

std::vector<double> default_time_samples(const dicke::NormalModeData& modes, int n) {
    // Chebyshev points of the first kind mapped to [0, pi/eps1].
    const double L = std::numbers::pi / modes.eps1;
    std::vector<double> t(n);
    for (int k = 0; k < n; ++k)
        t[k] = 0.5 * L * (1.0 - std::cos(std::numbers::pi * (k + 0.5) / n));
    return t;
}

CorrelatorSeries connected_correlator(const dicke::DickeParams& p, dicke::Phase phase,
                                      const ActionAssignment& a, int i, int j,
                                      std::span<const double> t_samples, int n_angles,
                                      double cond_max) {
    if (i < 1 || i > 2 || j < 1 || j > 2)
        throw DomainViolation("connected_correlator: indices must be 1 or 2");
    if (n_angles < 64)
        throw DomainViolation("connected_correlator: need at least 64 angles per torus axis");

    const dicke::NormalModeData m = dicke::normal_mode_data(p, phase);
    const std::vector<double> freqs = {0.0, 2.0 * m.eps1, 2.0 * m.eps2, m.eps1 + m.eps2,
                                       std::abs(m.eps1 - m.eps2)};
    if (t_samples.size() < 2 * freqs.size())
        throw DomainViolation("connected_correlator: need at least " +
                              std::to_string(2 * freqs.size()) + " time samples");

    const DeformationCoeffs ci = deformation_coeffs(m, i);
    const DeformationCoeffs cj = deformation_coeffs(m, j);
    const ModeAmplitudes amp{std::sqrt(2.0 * a.I1 / m.eps1), std::sqrt(2.0 * a.I2 / m.eps2)};

    const int n = n_angles;
    const std::size_t n2 = static_cast<std::size_t>(n) * n;

    // Mode values at t = 0 over the angle grid (uniform rule, exact for the
    // trig-polynomial integrand).
    std::vector<double> q1_0(n), q2_0(n);
    for (int k = 0; k < n; ++k) {
        const double phi = two_pi * k / n;
        q1_0[k] = amp.amp1 * std::sin(phi);
        q2_0[k] = amp.amp2 * std::sin(phi);
    }

    std::vector<double> oi0(n2);
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = 0; k2 < n; ++k2) {
            const double q1 = q1_0[k1], q2 = q2_0[k2];
            oi0[static_cast<std::size_t>(k1) * n + k2] =
                ci.a1 * q1 * q1 + ci.a2 * q2 * q2 + ci.a3 * q1 * q2;
        }
    double mean_oi0 = 0.0;
    for (double v : oi0) mean_oi0 += v;
    mean_oi0 /= static_cast<double>(n2);

    const std::size_t nt = t_samples.size();
    std::vector<double> lambda(nt);
    std::vector<double> q1_t(n), q2_t(n);
    for (std::size_t s = 0; s < nt; ++s) {
        const double t = t_samples[s];
        for (int k = 0; k < n; ++k) {
            const double phi = two_pi * k / n;
            q1_t[k] = amp.amp1 * std::sin(phi + m.eps1 * t);
            q2_t[k] = amp.amp2 * std::sin(phi + m.eps2 * t);
        }
        double cross = 0.0, mean_ojt = 0.0;
        for (int k1 = 0; k1 < n; ++k1) {
            const double q1 = q1_t[k1];
            const std::size_t row = static_cast<std::size_t>(k1) * n;
            for (int k2 = 0; k2 < n; ++k2) {
                const double q2 = q2_t[k2];
                const double oj = cj.a1 * q1 * q1 + cj.a2 * q2 * q2 + cj.a3 * q1 * q2;
                cross += oi0[row + k2] * oj;
                mean_ojt += oj;
            }
        }
        cross /= static_cast<double>(n2);
        mean_ojt /= static_cast<double>(n2);
        lambda[s] = cross - mean_oi0 * mean_ojt;
    }

    // Least-squares projection onto {1, cos(w t), sin(w t)}.
    const int ncols = 1 + 2 * static_cast<int>(freqs.size() - 1);
    Eigen::MatrixXd design(nt, ncols);
    Eigen::VectorXd rhs(nt);
    for (std::size_t s = 0; s < nt; ++s) {
        design(s, 0) = 1.0;
        for (std::size_t f = 1; f < freqs.size(); ++f) {
            design(s, 1 + 2 * (f - 1)) = std::cos(freqs[f] * t_samples[s]);
            design(s, 2 + 2 * (f - 1)) = std::sin(freqs[f] * t_samples[s]);
        }
        rhs(s) = lambda[s];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) / svd.singularValues()(ncols - 1);
    if (!(cond < cond_max))
        throw IllConditionedProjection(
            "connected_correlator: harmonic design matrix condition " + std::to_string(cond) +
            " exceeds " + std::to_string(cond_max) + " (aliasing frequencies?)");
    Eigen::VectorXd coef = svd.solve(rhs);

    CorrelatorSeries out;
    out.frequencies = freqs;
    out.cos_coeffs.resize(freqs.size());
    out.sin_coeffs.resize(freqs.size() - 1);
    out.cos_coeffs[0] = coef(0);
    for (std::size_t f = 1; f < freqs.size(); ++f) {
        out.cos_coeffs[f] = coef(1 + 2 * (f - 1));
        out.sin_coeffs[f - 1] = coef(2 + 2 * (f - 1));
    }

    // Install the independently assigned action squares. The trajectory carries
    // the literal actions (I1, I2), so the measured 2*eps_a lines are
    // proportional to I_a^2 and the mixed lines to I1*I2; the harmonic
    // projection separates these monomials, and the quantization rule replaces
    // each literal square by its assigned value. With I_asq == I_a^2 this is a
    // no-op and the series is the raw torus average.
    const double r1 = a.I1sq / (a.I1 * a.I1);
    const double r2 = a.I2sq / (a.I2 * a.I2);
    out.cos_coeffs[1] *= r1;
    out.sin_coeffs[0] *= r1;
    out.cos_coeffs[2] *= r2;
    out.sin_coeffs[1] *= r2;
    out.signal_norm = std::sqrt(rhs.squaredNorm() / static_cast<double>(nt));
    const double res = (design * coef - rhs).norm();
    out.fit_residual = out.signal_norm > 0.0
                           ? res / (std::sqrt(static_cast<double>(nt)) * out.signal_norm)
                           : res;
    return out;
}

namespace {

double series_metric_entry(const CorrelatorSeries& s, double dc_tol) {
    const double scale = std::max(s.signal_norm, 1e-300);
    if (std::abs(s.cos_coeffs[0]) > dc_tol * std::max(1.0, scale))
        throw DcLeakage("regularized_metric: DC coefficient " +
                        std::to_string(s.cos_coeffs[0]) +
                        " in a connected correlator (relative tolerance " +
                        std::to_string(dc_tol) + ")");
    double g = 0.0;
    for (std::size_t f = 1; f < s.frequencies.size(); ++f) {
        const double w = s.frequencies[f];
        if (w <= 0.0) continue;  // degenerate dictionary entry carries no weight
        g += s.cos_coeffs[f] / (w * w);
    }
    return g;
}

} // namespace

MetricTensor2D regularized_metric(const std::array<CorrelatorSeries, 4>& series, double dc_tol) {
    const double g11 = series_metric_entry(series[0], dc_tol);
    const double g12 = series_metric_entry(series[1], dc_tol);
    const double g21 = series_metric_entry(series[2], dc_tol);
    const double g22 = series_metric_entry(series[3], dc_tol);
    return {g11, 0.5 * (g12 + g21), g22};
}

MetricTensor2D oracle_metric(const dicke::DickeParams& p, dicke::Phase phase,
                             const ActionAssignment& a, const OracleOptions& opts) {
    const dicke::NormalModeData m = dicke::normal_mode_data(p, phase);
    const std::vector<double> ts = default_time_samples(m, opts.n_time_samples);
    std::array<CorrelatorSeries, 4> series;
    int idx = 0;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            series[idx++] =
                connected_correlator(p, phase, a, i, j, ts, opts.n_angles, opts.cond_max);
    return regularized_metric(series, opts.dc_tol);
}

} // namespace qgeo::oracle
