#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "qgeo/errors.hpp"

namespace qgeo {

/// A point x = (x1, x2) in the two-dimensional adiabatic parameter space.
/// For the Dicke model x = (omega, lambda); for the LMG model x = (h, gamma).
struct ParameterPoint {
    double x1 = 0.0;
    double x2 = 0.0;

    bool finite() const { return std::isfinite(x1) && std::isfinite(x2); }
};

/// Symmetric 2x2 metric at a parameter point; g21 == g12 by construction.
struct MetricTensor2D {
    double g11 = 0.0;
    double g12 = 0.0;
    double g22 = 0.0;

    double determinant() const { return g11 * g22 - g12 * g12; }
    double trace() const { return g11 + g22; }

    /// Smaller eigenvalue of the 2x2 symmetric matrix.
    double min_eigenvalue() const {
        double half_tr = 0.5 * (g11 + g22);
        double disc = std::sqrt(0.25 * (g11 - g22) * (g11 - g22) + g12 * g12);
        return half_tr - disc;
    }

    bool is_psd(double tol_rel = 1e-10) const {
        return min_eigenvalue() >= -tol_rel * std::abs(trace());
    }

    MetricTensor2D operator+(const MetricTensor2D& o) const {
        return {g11 + o.g11, g12 + o.g12, g22 + o.g22};
    }
    MetricTensor2D operator-(const MetricTensor2D& o) const {
        return {g11 - o.g11, g12 - o.g12, g22 - o.g22};
    }
    MetricTensor2D operator*(double s) const { return {s * g11, s * g12, s * g22}; }
};

inline double determinant(const MetricTensor2D& g) { return g.determinant(); }

/// Symmetric rank-one tensor v (x) v from a gradient vector.
inline MetricTensor2D outer(const std::array<double, 2>& v) {
    return {v[0] * v[0], v[0] * v[1], v[1] * v[1]};
}

/// Default action-variable assignment: I_a = 1/2 for terms linear in the action,
/// I_a^2 = 1 for quadratic ones. The squares are independent knobs because the
/// classical/quantum matching fixes them separately.
struct ActionAssignment {
    double I1 = 0.5;
    double I2 = 0.5;
    double I1sq = 1.0;
    double I2sq = 1.0;
};

/// A metric-valued function of the parameters together with its validity domain.
/// Evaluators must be deterministic: the same point yields a bitwise-identical
/// tensor.
struct MetricField {
    std::function<MetricTensor2D(ParameterPoint)> evaluator;
    std::function<bool(ParameterPoint)> domain;

    MetricTensor2D operator()(ParameterPoint p) const { return evaluator(p); }
    bool contains(ParameterPoint p) const { return !domain || domain(p); }
};

/// Metric plus every derivative the two-dimensional curvature formula consumes:
/// first derivatives of all components along both axes, and the four second
/// derivatives d11 g22, d22 g11, d12 g11, d12 g12.
struct MetricDerivatives {
    MetricTensor2D g;
    std::array<double, 3> d1{};  // d/dx1 of (g11, g12, g22)
    std::array<double, 3> d2{};  // d/dx2 of (g11, g12, g22)
    double d11_g22 = 0.0;
    double d22_g11 = 0.0;
    double d12_g11 = 0.0;
    double d12_g12 = 0.0;
};

enum class CurvatureMethod { closed_form, finite_difference };

struct CurvatureResult {
    double R = 0.0;
    CurvatureMethod method = CurvatureMethod::closed_form;
    double step = 0.0;  // 0 for closed-form
};

/// Degeneracy threshold for the curvature routines; scales with (trace)^2 so the
/// check is dimensionless.
inline double degeneracy_threshold(const MetricTensor2D& g, double eps_rel = 1e-12) {
    double t = g.g11 + g.g22;
    return eps_rel * t * t;
}

/// Scalar curvature of a 2D metric from closed-form derivatives, with the
/// contraction convention R = g^{ij} R^k_{ikj} (unit sphere gives R = +2).
/// Throws DegenerateMetric when det(g) is at or below the threshold.
CurvatureResult scalar_curvature_closed(const MetricDerivatives& d, double eps_det_rel = 1e-12);

struct FdOptions {
    bool refine = false;        // Richardson extrapolation over {step, step/2}
    double eps_det_rel = 1e-12;
};

/// Builds the derivative bundle at p by central finite differences: 5-point
/// stencils along each axis, 4-point cross stencil for the mixed partials.
/// All 13 stencil points must lie inside the field's domain.
MetricDerivatives fd_derivatives(const MetricField& field, ParameterPoint p, double step);

/// Scalar curvature by finite differences of a metric field.
CurvatureResult scalar_curvature_fd(const MetricField& field, ParameterPoint p, double step,
                                    const FdOptions& opts = {});

/// Uniformly spaced grid of metric samples, row-major with x1 as the slow index:
/// cell (i1, i2) lives at samples[i1 * n2 + i2].
struct MetricGrid {
    int n1 = 0;
    int n2 = 0;
    std::vector<MetricTensor2D> samples;

    const MetricTensor2D& at(int i1, int i2) const { return samples[static_cast<std::size_t>(i1) * n2 + i2]; }
};

struct CurvatureGrid {
    int n1 = 0;
    int n2 = 0;
    std::vector<std::optional<CurvatureResult>> cells;

    const std::optional<CurvatureResult>& at(int i1, int i2) const {
        return cells[static_cast<std::size_t>(i1) * n2 + i2];
    }
};

/// Curvature on every interior grid point using the same stencils as
/// scalar_curvature_fd; a border of 2 cells is left absent, as are points where
/// the sampled metric is degenerate. Requires at least a 5x5 grid.
CurvatureGrid curvature_from_mesh(const MetricGrid& grid, double spacing1, double spacing2,
                                  double eps_det_rel = 1e-12, int nthreads = 0);

} // namespace qgeo
