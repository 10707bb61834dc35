#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgeo/errors.hpp"

namespace qgeo::analysis {

/// One-axis parameter sweep. Per-point failures are recorded as absent entries,
/// not propagated; every column has exactly one entry per grid value.
struct SweepResult {
    std::string axis;
    std::vector<double> grid;
    std::vector<std::string> column_names;
    std::vector<std::vector<std::optional<double>>> columns;  // [column][point]
    std::map<std::string, double> fixed;                      // metadata
    std::string grid_spec;

    const std::vector<std::optional<double>>& column(const std::string& name) const;
};

/// Evaluates point_fn (returning one value per column) over the grid in
/// parallel with pre-assigned output slots. A throwing point leaves its row
/// absent.
SweepResult sweep(const std::string& axis, std::vector<double> grid,
                  std::vector<std::string> column_names,
                  const std::function<std::vector<std::optional<double>>(double)>& point_fn,
                  std::map<std::string, double> fixed = {}, int nthreads = 0);

/// Signed local extremum of a sampled quantity, refined off-grid.
struct Peak {
    double location = 0.0;
    double height = 0.0;
    enum class Kind { maximum, minimum } kind = Kind::maximum;
    int index = 0;  // ordinal by ascending location
};

struct PeakOptions {
    double xtol = 1e-6;         // golden-section location tolerance
    double prominence = 0.0;    // ignore extrema that rise/dip less than this
};

/// All interior local maxima and minima of a column: 3-point detection,
/// parabolic refinement, and a golden-section polish when an evaluator for the
/// underlying model is supplied. Returns an empty list when there are none.
std::vector<Peak> find_peaks(const SweepResult& s, const std::string& quantity,
                             const std::function<double(double)>& evaluator = {},
                             const PeakOptions& opts = {});

/// Same detection logic on a plain (x, y) series.
std::vector<Peak> find_peaks(std::span<const double> xs,
                             std::span<const std::optional<double>> ys,
                             const std::function<double(double)>& evaluator = {},
                             const PeakOptions& opts = {});

enum class FitModel {
    poly2,    // a + b x + c x^2
    rat1,     // a + b/(x - c), pole fitted
    rat1f,    // a + b/(x - 1)
    rat2f,    // a + b/(x - 1)^2
    power,    // a + b x^(-p)
    loglin,   // ln|y| = m ln x + n, coefficients (m, n)
    lin,      // a + b x
};

const char* fit_model_name(FitModel m);

struct FitResult {
    FitModel model = FitModel::lin;
    std::vector<double> coefficients;
    double residual = 0.0;  // rms in the fitted space (log space for loglin)
};

/// Least squares: linear models directly, nonlinear ones (rat1, power) seeded
/// by a deterministic coarse grid over the nonlinear coefficient and refined by
/// damped Gauss-Newton. Throws SingularFit when underdetermined or
/// rank-deficient.
FitResult fit(FitModel model, std::span<const double> xs, std::span<const double> ys);

/// Evaluates a fitted model at x.
double fit_eval(const FitResult& f, double x);

/// j where a power-law fit a + b j^(-p) of signed peak heights crosses zero.
/// Requires the data to bracket a sign change.
double curvature_crossing(std::span<const double> js, std::span<const double> heights);

} // namespace qgeo::analysis
