#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qgeo/analysis.hpp"

namespace qgeo::analysis {

/// Knobs of the finite-j LMG peak study. The defaults reproduce the reference
/// setup: h-grid of 1e-3 near the transition, off-grid refinement to 1e-6, and
/// a 5-row mesh in gamma for the curvature.
struct PeakScanConfig {
    double h_min = 0.35;       // metric-component scan window
    double h_max = 1.25;
    double r_h_min = 0.3;      // curvature scan window (R extrema sit lower at small j)
    double r_h_max = 1.10;
    double base_step = 1e-3;
    double refine_tol = 1e-6;
    double r_refine_tol = 1e-4;  // R heights are flat to O(tol^2) at the extremum
    double r_prominence = 0.02;  // rejects stencil-noise wiggles in the R scan
    double slope_delta0 = 0.02;  // first half-step for dR/dh at h = 1
    double slope_agree = 0.01;   // halve until consecutive estimates agree to 1%
    int nthreads = 0;
};

struct MetricPeaks {
    std::vector<Peak> g11;
    std::vector<Peak> g12;
    std::vector<Peak> g22;
};

/// Extrema of the exact QMT components over h at fixed gamma and j.
MetricPeaks locate_metric_peaks(double j, double gamma, const PeakScanConfig& cfg = {});

/// Extrema of the exact scalar curvature R(h) at fixed gamma and j: a scan of
/// Richardson-refined stencil evaluations on a width-adapted grid, persistence
/// pruning of stencil noise, then golden-section refinement.
std::vector<Peak> locate_curvature_peaks(double j, double gamma,
                                         const PeakScanConfig& cfg = {});

/// dR/dh at h = 1 by central differences with the half-step halved until two
/// consecutive estimates agree to cfg.slope_agree.
double curvature_slope_at_critical(double j, double gamma, const PeakScanConfig& cfg = {});

struct SlopeSeries {
    std::vector<double> js;
    std::vector<double> slopes;
    FitResult fit;  // lin: slope(j) = a + b j
};

/// Slopes for every j in the set plus their linear fit.
SlopeSeries slope_at_critical(std::span<const double> j_set, double gamma,
                              const PeakScanConfig& cfg = {});

/// One named peak family tracked across the j set.
struct PeakFamily {
    std::string name;               // e.g. "g11_peak", "r_peak1"
    std::vector<double> js;         // j values where the peak was found
    std::vector<double> locations;
    std::vector<double> heights;    // signed
    std::optional<FitResult> loglin_j;  // ln|height| vs ln j
    std::optional<FitResult> fit_h;     // height vs location, model per family
    std::optional<FitResult> fit_j;     // height vs j (power law), R peaks only
};

struct PeaksFitsReport {
    double gamma = 0.0;
    std::vector<double> j_set;
    std::vector<PeakFamily> families;
    std::optional<SlopeSeries> slope;
    std::optional<double> crossing_j;  // where the fitted R maximum crosses zero

    const PeakFamily* family(const std::string& name) const;
};

/// Full study: peaks of g11/g12/g22 and R for every j, the Table-style loglin
/// fits, the height-vs-location and height-vs-j interpolations, the dR/dh
/// slope fit, and the zero crossing of the R maximum.
PeaksFitsReport run_peaks_fits(double gamma, std::span<const double> j_set,
                               const PeakScanConfig& cfg = {}, bool with_slope = true,
                               bool metric_components = true);

/// The reference pseudospin set used throughout the finite-size study.
std::vector<double> default_j_set();

} // namespace qgeo::analysis
