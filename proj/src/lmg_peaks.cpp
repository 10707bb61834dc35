#include "qgeo/lmg_peaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgeo/geometry.hpp"
#include "qgeo/lmg_exact.hpp"
#include "qgeo/threading.hpp"

namespace qgeo::analysis {

namespace {

std::vector<double> linear_grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double x = lo; x <= hi + 0.5 * step; x += step) g.push_back(x);
    return g;
}

// The precursors crowd toward h = 1 roughly like 1 - h ~ j^(-0.62); scanning
// a window that shrinks accordingly keeps the large-j sweeps affordable.
double window_low(double j, double floor_h) {
    return std::max(floor_h, 1.0 - 5.5 * std::pow(j, -0.62));
}

// Past h ~ 1 + 1.5 j^(-2/3) the exact-QMT determinant collapses and the
// stencil quotient turns into noise; the R extrema always sit below that.
double r_window_high(double j, double cap) {
    return std::min(cap, 1.0 + 1.5 * std::pow(j, -2.0 / 3.0));
}

// Step policy for the finite-difference curvature of the exact QMT: the
// metric sharpens with j, and Richardson refinement removes the leading
// cross-stencil error. Chosen from step-halving convergence studies; the
// refined values at these steps sit on the convergence plateau.
double curvature_step(double j) { return j <= 100 ? 1e-3 : 5e-4; }

// Detection grid for R(h): each refined evaluation costs 26 diagonalizations,
// so scan at a fraction of the precursor width instead of the base grid.
double r_scan_step(double j) {
    return std::clamp(std::pow(j, -2.0 / 3.0) / 6.0, 1e-3, 0.03);
}

} // namespace

MetricPeaks locate_metric_peaks(double j, double gamma, const PeakScanConfig& cfg) {
    const double lo = window_low(j, cfg.h_min);
    const std::vector<double> grid = linear_grid(lo, cfg.h_max, cfg.base_step);
    SweepResult s = sweep(
        "h", grid, {"g11", "g12", "g22"},
        [&](double h) -> std::vector<std::optional<double>> {
            const MetricTensor2D g = lmg::exact_qmt(j, h, gamma).g;
            return {g.g11, g.g12, g.g22};
        },
        {{"j", j}, {"gamma", gamma}}, cfg.nthreads);

    const MetricField field = lmg::exact_qmt_field(j);
    PeakOptions popt;
    popt.xtol = cfg.refine_tol;
    auto component = [&](int k) {
        return [k, gamma, field](double h) {
            const MetricTensor2D g = field({h, gamma});
            return k == 0 ? g.g11 : (k == 1 ? g.g12 : g.g22);
        };
    };
    MetricPeaks out;
    out.g11 = find_peaks(s, "g11", component(0), popt);
    out.g12 = find_peaks(s, "g12", component(1), popt);
    out.g22 = find_peaks(s, "g22", component(2), popt);
    return out;
}

namespace {

// Persistence pruning: repeatedly drop the adjacent extremum pair with the
// smallest height gap until every gap clears the threshold. Removes stencil
// noise without touching the two genuine precursors.
void prune_alternations(std::vector<Peak>& peaks, double prominence) {
    while (peaks.size() >= 2) {
        double smallest = std::numeric_limits<double>::infinity();
        std::size_t at = 0;
        for (std::size_t k = 0; k + 1 < peaks.size(); ++k) {
            const double gap = std::abs(peaks[k].height - peaks[k + 1].height);
            if (gap < smallest) {
                smallest = gap;
                at = k;
            }
        }
        if (smallest >= prominence) break;
        peaks.erase(peaks.begin() + at, peaks.begin() + at + 2);
    }
    for (std::size_t k = 0; k < peaks.size(); ++k) peaks[k].index = static_cast<int>(k);
}

} // namespace

std::vector<Peak> locate_curvature_peaks(double j, double gamma, const PeakScanConfig& cfg) {
    const double lo = window_low(j, cfg.r_h_min);
    const double hi = r_window_high(j, cfg.r_h_max);
    const std::vector<double> hs = linear_grid(lo, hi, r_scan_step(j));

    const MetricField field = lmg::exact_qmt_field(j);
    FdOptions fdo;
    fdo.refine = true;
    const double step = curvature_step(j);
    auto r_eval = [field, gamma, step, fdo](double h) {
        return scalar_curvature_fd(field, {h, gamma}, step, fdo).R;
    };

    std::vector<std::optional<double>> rs(hs.size());
    parallel_for(hs.size(), [&](std::size_t k) {
        try {
            rs[k] = r_eval(hs[k]);
        } catch (const Error&) {
            rs[k] = std::nullopt;
        }
    }, cfg.nthreads);

    PeakOptions popt;
    popt.xtol = cfg.r_refine_tol;
    std::vector<Peak> peaks = find_peaks(hs, rs, r_eval, popt);
    prune_alternations(peaks, cfg.r_prominence);
    return peaks;
}

double curvature_slope_at_critical(double j, double gamma, const PeakScanConfig& cfg) {
    const MetricField field = lmg::exact_qmt_field(j);
    FdOptions fdo;
    fdo.refine = true;
    const double step = curvature_step(j);
    auto r_at = [&](double h) { return scalar_curvature_fd(field, {h, gamma}, step, fdo).R; };

    // Central differences with a halved half-step until two consecutive
    // estimates agree; the noise-floor exit only arms once delta resolves the
    // precursor width, where the estimates have stopped drifting systematically.
    const double resolved = std::pow(j, -2.0 / 3.0) / 3.0;
    double delta = cfg.slope_delta0;
    double prev = (r_at(1.0 + delta) - r_at(1.0 - delta)) / (2.0 * delta);
    double prev_change = std::numeric_limits<double>::infinity();
    for (int level = 0; level < 8; ++level) {
        delta *= 0.5;
        const double cur = (r_at(1.0 + delta) - r_at(1.0 - delta)) / (2.0 * delta);
        const double change = std::abs(cur - prev);
        if (delta <= resolved && change <= cfg.slope_agree * std::abs(cur)) return cur;
        if (delta <= resolved && change > prev_change) return prev;
        prev = cur;
        prev_change = change;
    }
    return prev;
}

SlopeSeries slope_at_critical(std::span<const double> j_set, double gamma,
                              const PeakScanConfig& cfg) {
    SlopeSeries out;
    out.js.assign(j_set.begin(), j_set.end());
    out.slopes.resize(out.js.size());
    for (std::size_t k = 0; k < out.js.size(); ++k)
        out.slopes[k] = curvature_slope_at_critical(out.js[k], gamma, cfg);
    out.fit = fit(FitModel::lin, out.js, out.slopes);
    return out;
}

const PeakFamily* PeaksFitsReport::family(const std::string& name) const {
    for (const auto& f : families)
        if (f.name == name) return &f;
    return nullptr;
}

namespace {

void append_peak(PeakFamily& fam, double j, const Peak& p) {
    fam.js.push_back(j);
    fam.locations.push_back(p.location);
    fam.heights.push_back(p.height);
}

void finish_family(PeakFamily& fam, std::optional<FitModel> h_model, bool power_in_j) {
    if (fam.js.size() >= 3) {
        try {
            fam.loglin_j = fit(FitModel::loglin, fam.js, fam.heights);
        } catch (const SingularFit&) {
        }
    }
    if (h_model && fam.js.size() >= 4) {
        try {
            fam.fit_h = fit(*h_model, fam.locations, fam.heights);
        } catch (const SingularFit&) {
        }
    }
    if (power_in_j && fam.js.size() >= 4) {
        try {
            fam.fit_j = fit(FitModel::power, fam.js, fam.heights);
        } catch (const SingularFit&) {
        }
    }
}

// The single dominant peak of a component (largest |height|).
const Peak* dominant(const std::vector<Peak>& v) {
    const Peak* best = nullptr;
    for (const auto& p : v)
        if (!best || std::abs(p.height) > std::abs(best->height)) best = &p;
    return best;
}

const Peak* dominant_of_kind(const std::vector<Peak>& v, Peak::Kind kind) {
    const Peak* best = nullptr;
    for (const auto& p : v)
        if (p.kind == kind && (!best || std::abs(p.height) > std::abs(best->height)))
            best = &p;
    return best;
}

// R precursors: the minimum is the leftmost surviving one (the broken side is
// clean); the maximum is the most positive one.
const Peak* r_minimum(const std::vector<Peak>& v) {
    for (const auto& p : v)
        if (p.kind == Peak::Kind::minimum) return &p;
    return nullptr;
}

const Peak* r_maximum(const std::vector<Peak>& v) {
    const Peak* best = nullptr;
    for (const auto& p : v)
        if (p.kind == Peak::Kind::maximum && (!best || p.height > best->height)) best = &p;
    return best;
}

} // namespace

PeaksFitsReport run_peaks_fits(double gamma, std::span<const double> j_set,
                               const PeakScanConfig& cfg, bool with_slope,
                               bool metric_components) {
    PeaksFitsReport rep;
    rep.gamma = gamma;
    rep.j_set.assign(j_set.begin(), j_set.end());

    PeakFamily g11{"g11_peak", {}, {}, {}, {}, {}, {}};
    PeakFamily g12_1{"g12_peak1", {}, {}, {}, {}, {}, {}};
    PeakFamily g12_2{"g12_peak2", {}, {}, {}, {}, {}, {}};
    PeakFamily g22_1{"g22_peak1", {}, {}, {}, {}, {}, {}};
    PeakFamily g22_2{"g22_peak2", {}, {}, {}, {}, {}, {}};
    PeakFamily g22_3{"g22_peak3", {}, {}, {}, {}, {}, {}};
    PeakFamily r1{"r_peak1", {}, {}, {}, {}, {}, {}};
    PeakFamily r2{"r_peak2", {}, {}, {}, {}, {}, {}};

    for (double j : rep.j_set) {
        if (metric_components) {
            const MetricPeaks mp = locate_metric_peaks(j, gamma, cfg);
            if (const Peak* p = dominant(mp.g11)) append_peak(g11, j, *p);
            // The g12 precursors have opposite signs; the negative one sits at
            // lower h and is indexed first.
            if (const Peak* p = dominant_of_kind(mp.g12, Peak::Kind::minimum))
                append_peak(g12_1, j, *p);
            if (const Peak* p = dominant_of_kind(mp.g12, Peak::Kind::maximum))
                append_peak(g12_2, j, *p);
            // g22 shows three extrema; index them by ascending location.
            PeakFamily* g22s[3] = {&g22_1, &g22_2, &g22_3};
            for (std::size_t k = 0; k < mp.g22.size() && k < 3; ++k)
                append_peak(*g22s[k], j, mp.g22[k]);
        }
        const std::vector<Peak> rp = locate_curvature_peaks(j, gamma, cfg);
        if (const Peak* p = r_minimum(rp)) append_peak(r1, j, *p);
        if (const Peak* p = r_maximum(rp)) append_peak(r2, j, *p);
    }

    finish_family(g11, FitModel::rat2f, false);
    finish_family(g12_1, FitModel::rat1f, false);
    finish_family(g12_2, FitModel::rat1f, false);
    finish_family(g22_1, FitModel::poly2, false);
    finish_family(g22_2, FitModel::poly2, false);
    finish_family(g22_3, FitModel::poly2, false);
    finish_family(r1, FitModel::rat1, true);
    finish_family(r2, FitModel::rat1, true);

    if (r2.js.size() >= 4) {
        try {
            rep.crossing_j = curvature_crossing(r2.js, r2.heights);
        } catch (const NoBracket&) {
        }
    }

    rep.families = {g11, g12_1, g12_2, g22_1, g22_2, g22_3, r1, r2};
    if (with_slope) rep.slope = slope_at_critical(rep.j_set, gamma, cfg);
    return rep;
}

std::vector<double> default_j_set() {
    return {12, 16, 20, 24, 28, 32, 40, 50, 75, 100, 125, 175, 250, 300, 500};
}

} // namespace qgeo::analysis
