// Acceptance suite: every release criterion with its pinned tolerance, one
// verdict line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "qgeo/analysis.hpp"
#include "qgeo/lmg_peaks.hpp"
#include "qgeo/validation.hpp"

using namespace qgeo;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(int k, bool passed, const std::string& name, const std::string& detail) {
    std::printf("%s  [%2d] %s: %s\n", passed ? "PASS" : "FAIL", k, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!passed) ++failures;
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(double x) {
    char b[64];
    std::snprintf(b, sizeof b, "%.4g", x);
    return b;
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

} // namespace

int main() {
    setenv("OPENBLAS_NUM_THREADS", "1", 1);
    validation::CheckOptions opts;

    {
        const auto t0 = clock_type::now();
        const auto r = validation::check_anomaly_identity(opts);
        const double dt = seconds_since(t0);
        verdict(1, r.passed && dt < 1.0, "anomaly identity (100 points/phase, 1e-12)",
                r.detail + ", " + fmt(dt) + " s");
    }
    {
        const auto r = validation::check_resonance_equalities(opts);
        verdict(2, r.passed, "resonance equalities (1e-14 shared, g11 split > 1e-6)", r.detail);
    }
    {
        const auto r = validation::check_curvature_limits(opts);
        verdict(3, r.passed, "curvature limits (|R+4| < 0.1; resonant |R| > 1e3)", r.detail);
    }
    {
        const auto t0 = clock_type::now();
        const auto r = validation::check_classical_oracle(opts);
        const double dt = seconds_since(t0);
        verdict(4, r.passed && dt < 30.0, "torus-average oracle vs closed form (1e-6)",
                r.detail + ", " + fmt(dt) + " s");
    }
    {
        const auto r = validation::check_lmg_determinants(opts);
        verdict(5, r.passed, "LMG determinants (symmetric ~ 0; broken closed form)", r.detail);
    }
    {
        const auto r = validation::check_eq63_crosscheck(opts);
        verdict(6, r.passed, "broken-phase curvature closed vs finite differences (1e-5)",
                r.detail);
    }
    {
        const auto r = validation::check_finite_vs_thermo(opts);
        verdict(7, r.passed, "exact QMT vs thermodynamic g11 at j = 500 (5%)", r.detail);
    }
    {
        const auto r = validation::check_fidelity_pair(opts);
        verdict(8, r.passed, "perturbative QMT vs fidelity oracle (1e-3)", r.detail);
    }

    // Criteria 9-11 share one finite-j peak study.
    const auto t9 = clock_type::now();
    analysis::PeakScanConfig scan;
    const std::vector<double> jset = analysis::default_j_set();
    const analysis::PeaksFitsReport rep = analysis::run_peaks_fits(-0.5, jset, scan);
    const std::vector<double> jset_small = {12, 16, 20, 24, 28, 32, 40, 50, 75, 100, 125};
    const analysis::PeaksFitsReport rep01 =
        analysis::run_peaks_fits(-0.1, jset_small, scan, /*with_slope=*/false,
                                 /*metric_components=*/false);
    const double dt9 = seconds_since(t9);

    {
        const auto* g11 = rep.family("g11_peak");
        const auto* g12a = rep.family("g12_peak1");
        const auto* g12b = rep.family("g12_peak2");
        bool ok = g11 && g11->loglin_j && g12a && g12a->loglin_j && g12b && g12b->loglin_j;
        std::string detail = "peak fits missing";
        if (ok) {
            const double m11 = g11->loglin_j->coefficients[0];
            const double msum =
                g12a->loglin_j->coefficients[0] + g12b->loglin_j->coefficients[0];
            ok = within(m11, 1.3103, 0.02) && within(msum, 1.3142, 0.03) && dt9 < 1800.0;
            detail = "m(g11) = " + fmt(m11) + " (1.3103 +- 0.02), m1+m2(g12) = " + fmt(msum) +
                     " (1.3142 +- 0.03), sweep " + fmt(dt9) + " s";
        }
        verdict(9, ok, "Table reproduction via log-log peak fits", detail);
    }
    {
        bool ok = rep.slope.has_value() && rep.slope->fit.coefficients.size() == 2;
        std::string detail = "slope series missing";
        if (ok) {
            const double a = rep.slope->fit.coefficients[0];
            const double b = rep.slope->fit.coefficients[1];
            const bool ok_a = within(a, -34.2, 0.15 * 34.2);
            const bool ok_b = within(b, -0.65, 0.10 * 0.65);
            ok = ok_a && ok_b;
            detail = "intercept = " + fmt(a) + " (-34.2 +- 15%" +
                     (ok_a ? ", ok" : ", out") + "), slope = " + fmt(b) + " (-0.65 +- 10%" +
                     (ok_b ? ", ok" : ", out") + ")";
        }
        verdict(10, ok, "dR/dh at h = 1 vs j (linear fit)", detail);
    }
    {
        const auto* r1 = rep.family("r_peak1");
        const auto* r2 = rep.family("r_peak2");
        bool ok = r1 && r1->fit_j && r1->fit_h && r2 && r2->fit_j && r2->fit_h &&
                  rep.crossing_j && rep01.crossing_j;
        std::string detail = "curvature peak fits missing";
        if (ok) {
            const double a1 = r1->fit_j->coefficients[0];
            const double a2 = r2->fit_j->coefficients[0];
            // the height-vs-location interpolation at h = 1 must meet the
            // j -> infinity limit of the height-vs-j power law
            const double at1_min = analysis::fit_eval(*r1->fit_h, 1.0);
            const double at1_max = analysis::fit_eval(*r2->fit_h, 1.0);
            ok = within(a1, -4.645, 0.1) && within(a2, -0.365, 0.05) &&
                 within(*rep.crossing_j, 25.0, 2.0) && within(*rep01.crossing_j, 35.0, 2.0) &&
                 within(at1_min, a1, 0.1) && within(at1_max, a2, 0.1);
            detail = "R_min -> " + fmt(a1) + " (-4.645 +- 0.1), R_max -> " + fmt(a2) +
                     " (-0.365 +- 0.05), crossing " + fmt(*rep.crossing_j) +
                     " (25 +- 2), crossing[gamma = -0.1] " + fmt(*rep01.crossing_j) +
                     " (35 +- 2), h-fits at h = 1: " + fmt(at1_min) + "/" + fmt(at1_max);
        }
        verdict(11, ok, "R-peak extrapolation and zero crossing", detail);
    }
    {
        const auto r = validation::check_geometry_sanity(opts);
        verdict(12, r.passed, "geometry sanity (flat / sphere / hyperbolic)", r.detail);
    }

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
