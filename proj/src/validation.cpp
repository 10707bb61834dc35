#include "qgeo/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qgeo/dicke.hpp"
#include "qgeo/geometry.hpp"
#include "qgeo/lmg_exact.hpp"
#include "qgeo/lmg_thermo.hpp"
#include "qgeo/torus_oracle.hpp"

namespace qgeo::validation {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

CheckResult make_result(const std::string& name, bool passed, const std::string& detail) {
    return {name, passed, detail};
}

// Seeded off-resonance Dicke points: omega0 = 1, omega in [0.5, 1.5] away from
// 1, lambda strictly inside the requested phase.
std::vector<dicke::DickeParams> sample_points(std::mt19937_64& rng, dicke::Phase phase, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<dicke::DickeParams> pts;
    while (static_cast<int>(pts.size()) < n) {
        double omega = 0.5 + u(rng);
        if (std::abs(omega - 1.0) < 0.05) continue;  // off-resonance
        const double lc = 0.5 * std::sqrt(omega);
        const double f = 0.05 + 0.9 * u(rng);
        const double lambda = phase == dicke::Phase::normal ? f * lc : (1.0 + f) * lc;
        pts.push_back({1.0, omega, lambda});
    }
    return pts;
}

double rel_dev(const MetricTensor2D& a, const MetricTensor2D& b) {
    const double scale = std::max({std::abs(b.g11), std::abs(b.g12), std::abs(b.g22)});
    return std::max({std::abs(a.g11 - b.g11), std::abs(a.g12 - b.g12),
                     std::abs(a.g22 - b.g22)}) /
           scale;
}

} // namespace

CheckResult check_anomaly_identity(const CheckOptions& o) {
    std::mt19937_64 rng(o.seed);
    double worst = 0.0;
    for (dicke::Phase phase : {dicke::Phase::normal, dicke::Phase::superradiant}) {
        for (const auto& p : sample_points(rng, phase, o.points_per_phase)) {
            const MetricTensor2D cl = dicke::classical_metric(p, phase);
            const MetricTensor2D q = dicke::quantum_metric(p, phase);
            const MetricTensor2D an = dicke::anomaly_term(p, phase);
            const MetricTensor2D d = cl - q - an;
            worst = std::max({worst, std::abs(d.g11), std::abs(d.g12), std::abs(d.g22)});
        }
    }
    return make_result("eq30",
                       worst < o.tol_anomaly,
                       "max |classical - quantum - anomaly| = " + fmt(worst) + " (tol " +
                           fmt(o.tol_anomaly) + ")");
}

CheckResult check_resonance_equalities(const CheckOptions& o) {
    double worst_eq = 0.0, least_gap = std::numeric_limits<double>::infinity();
    for (double lambda : {0.1, 0.2, 0.3}) {
        const auto r = dicke::resonant_metrics(0.8, lambda, dicke::Phase::normal);
        worst_eq = std::max({worst_eq, std::abs(r.classical.g12 - r.quantum.g12),
                             std::abs(r.classical.g22 - r.quantum.g22)});
        least_gap = std::min(least_gap, std::abs(r.classical.g11 - r.quantum.g11));
    }
    const bool ok = worst_eq < o.tol_resonance_eq && least_gap > o.min_resonance_gap;
    return make_result("resonance", ok,
                       "shared components differ by " + fmt(worst_eq) + " (tol " +
                           fmt(o.tol_resonance_eq) + "); min |g11 - g11_q| = " +
                           fmt(least_gap));
}

CheckResult check_curvature_limits(const CheckOptions& o) {
    const double lc = dicke::critical_coupling({1.0, 0.8, 0.0});
    FdOptions fd;
    fd.refine = true;
    const double d = 1e-3;
    const double Rn = scalar_curvature_fd(dicke::quantum_metric_field(1.0, dicke::Phase::normal),
                                          {0.8, lc - d}, d / 100.0, fd).R;
    const double Rs =
        scalar_curvature_fd(dicke::quantum_metric_field(1.0, dicke::Phase::superradiant),
                            {0.8, lc + d}, d / 100.0, fd).R;
    const double dev = std::max(std::abs(Rn + 4.0), std::abs(Rs + 4.0));

    const double dr = 1e-4;
    double min_res = std::numeric_limits<double>::infinity();
    for (bool quantum : {true, false}) {
        const MetricField fn = quantum ? dicke::resonant_quantum_field(dicke::Phase::normal)
                                       : dicke::resonant_classical_field(dicke::Phase::normal);
        const MetricField fs = quantum
                                   ? dicke::resonant_quantum_field(dicke::Phase::superradiant)
                                   : dicke::resonant_classical_field(dicke::Phase::superradiant);
        min_res = std::min(min_res,
                           std::abs(scalar_curvature_fd(fn, {0.8, 0.4 - dr}, dr / 50.0, fd).R));
        min_res = std::min(min_res,
                           std::abs(scalar_curvature_fd(fs, {0.8, 0.4 + dr}, dr / 50.0, fd).R));
    }
    const bool ok = dev < o.tol_curvature_limit && min_res > o.min_resonant_R;
    return make_result("curvature-limit", ok,
                       "max |R + 4| = " + fmt(dev) + " at lambda_c -+ 1e-3 (tol " +
                           fmt(o.tol_curvature_limit) + "); min resonant |R| = " + fmt(min_res));
}

CheckResult check_classical_oracle(const CheckOptions& o) {
    std::mt19937_64 rng(o.seed + 1);
    oracle::OracleOptions opts;
    opts.n_angles = o.oracle_angles;
    double worst = 0.0;
    for (dicke::Phase phase : {dicke::Phase::normal, dicke::Phase::superradiant}) {
        for (const auto& p : sample_points(rng, phase, o.oracle_points)) {
            const MetricTensor2D ora = oracle::oracle_metric(p, phase, {}, opts);
            const MetricTensor2D ref = dicke::classical_metric(p, phase);
            worst = std::max(worst, rel_dev(ora, ref));
        }
    }
    return make_result("classical-oracle", worst < o.tol_oracle,
                       "max relative deviation from closed form = " + fmt(worst) + " (tol " +
                           fmt(o.tol_oracle) + ")");
}

CheckResult check_lmg_determinants(const CheckOptions& o) {
    double worst_sym = 0.0, worst_broken = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double h = 1.05 + 0.05 * k;          // symmetric side
        const double gamma = -0.9 + 1.8 * (k + 0.5) / 50.0;
        const auto sym = lmg::symmetric_metrics({h, gamma, 1.0});
        const double scale = std::max(sym.quantum.g11 * sym.quantum.g22,
                                      sym.quantum.g12 * sym.quantum.g12);
        worst_sym = std::max(worst_sym, std::abs(sym.quantum.determinant()) / scale);

        const double hb = (k + 0.5) / 50.0;        // broken side
        const double j = 1.0 + 7.0 * ((k * 13) % 50) / 50.0;
        const auto br = lmg::broken_metrics({hb, gamma, j});
        const double expect =
            j / (64.0 * std::sqrt((1.0 - hb * hb) * std::pow(1.0 - gamma, 5)));
        worst_broken =
            std::max(worst_broken, std::abs(br.quantum.determinant() - expect) / expect);
    }
    const bool ok = worst_sym < o.tol_sym_det && worst_broken < o.tol_broken_det;
    return make_result("lmg-determinants", ok,
                       "symmetric relative det = " + fmt(worst_sym) + " (tol " +
                           fmt(o.tol_sym_det) + "); broken det error = " + fmt(worst_broken) +
                           " (tol " + fmt(o.tol_broken_det) + ")");
}

CheckResult check_eq63_crosscheck(const CheckOptions& o) {
    double worst = 0.0;
    int idx = 0;
    for (double j : {1.0, 100.0}) {
        const MetricField field = lmg::broken_quantum_field(j);
        for (int k = 0; k < 10; ++k, ++idx) {
            const double h = 0.05 + 0.75 * k / 9.0;
            const double gamma = -0.7 + 1.4 * ((k * 7) % 10) / 9.0;
            const double closed = lmg::broken_curvature({h, gamma, j});
            const double fd = scalar_curvature_fd(field, {h, gamma}, 1e-4).R;
            worst = std::max(worst, std::abs(fd - closed) / std::abs(closed));
        }
    }
    return make_result("eq63-fd", worst < o.tol_eq63,
                       "max relative closed-vs-FD deviation = " + fmt(worst) + " (tol " +
                           fmt(o.tol_eq63) + ")");
}

CheckResult check_finite_vs_thermo(const CheckOptions& o) {
    double worst = 0.0;
    for (double h : {0.3, 0.5, 0.7, 1.3, 1.5, 1.7}) {
        const double exact = lmg::exact_qmt(500.0, h, -0.5).g.g11;
        const double thermo = h < 1.0 ? lmg::broken_metrics({h, -0.5, 500.0}).quantum.g11
                                      : lmg::symmetric_metrics({h, -0.5, 500.0}).quantum.g11;
        worst = std::max(worst, std::abs(exact - thermo) / thermo);
    }
    return make_result("finite-thermo", worst < o.tol_finite_thermo,
                       "max |g11_exact/g11_thermo - 1| = " + fmt(worst) + " at j = 500 (tol " +
                           fmt(o.tol_finite_thermo) + ")");
}

CheckResult check_fidelity_pair(const CheckOptions& o) {
    double worst = 0.0;
    for (double h : {1.3, 1.5, 2.0}) {
        const auto pert = lmg::exact_qmt(10.0, h, -0.5);
        const auto fid = lmg::fidelity_oracle(10.0, {h, -0.5}, o.fidelity_delta);
        worst = std::max(worst, rel_dev(fid.g, pert.g));
    }
    return make_result("fidelity-qmt", worst < o.tol_fidelity,
                       "max relative deviation oracle-vs-perturbative = " + fmt(worst) +
                           " (tol " + fmt(o.tol_fidelity) + ")");
}

CheckResult check_geometry_sanity(const CheckOptions& o) {
    // flat: exact zero from both routes
    MetricDerivatives flat;
    flat.g = {1.0, 0.0, 1.0};
    const double r_flat = scalar_curvature_closed(flat).R;

    MetricField unit;
    unit.evaluator = [](ParameterPoint) { return MetricTensor2D{1.0, 0.0, 1.0}; };
    const double r_flat_fd = scalar_curvature_fd(unit, {0.3, 0.7}, 1e-3).R;

    // unit sphere at x1 = 1.0
    auto sphere_d = [](double t) {
        MetricDerivatives d;
        d.g = {1.0, 0.0, std::sin(t) * std::sin(t)};
        d.d1 = {0.0, 0.0, std::sin(2.0 * t)};
        d.d11_g22 = 2.0 * std::cos(2.0 * t);
        return d;
    };
    const double r_sphere = scalar_curvature_closed(sphere_d(1.0)).R;
    MetricField sphere;
    sphere.evaluator = [](ParameterPoint p) {
        return MetricTensor2D{1.0, 0.0, std::sin(p.x1) * std::sin(p.x1)};
    };
    const double r_sphere_fd = scalar_curvature_fd(sphere, {1.0, 0.5}, 1e-4).R;

    // hyperbolic plane g = diag(1, sinh^2 x1)
    MetricDerivatives hyp;
    hyp.g = {1.0, 0.0, std::sinh(1.0) * std::sinh(1.0)};
    hyp.d1 = {0.0, 0.0, std::sinh(2.0)};
    hyp.d11_g22 = 2.0 * std::cosh(2.0);
    const double r_hyp = scalar_curvature_closed(hyp).R;
    MetricField hypf;
    hypf.evaluator = [](ParameterPoint p) {
        return MetricTensor2D{1.0, 0.0, std::sinh(p.x1) * std::sinh(p.x1)};
    };
    const double r_hyp_fd = scalar_curvature_fd(hypf, {1.0, 0.5}, 1e-4).R;

    const bool ok = r_flat == 0.0 && r_flat_fd == 0.0 &&
                    std::abs(r_sphere - 2.0) < o.tol_sphere_closed &&
                    std::abs(r_sphere_fd - 2.0) < o.tol_sphere_fd &&
                    std::abs(r_hyp + 2.0) < o.tol_sphere_closed &&
                    std::abs(r_hyp_fd + 2.0) < o.tol_sphere_fd;
    return make_result("geometry", ok,
                       "flat R = " + fmt(r_flat) + "/" + fmt(r_flat_fd) +
                           ", sphere R = " + fmt(r_sphere) + "/" + fmt(r_sphere_fd) +
                           ", hyperbolic R = " + fmt(r_hyp) + "/" + fmt(r_hyp_fd));
}

std::vector<CheckResult> run_all_checks(const CheckOptions& o) {
    return {check_anomaly_identity(o), check_resonance_equalities(o), check_curvature_limits(o),
            check_classical_oracle(o),  check_lmg_determinants(o),    check_eq63_crosscheck(o),
            check_finite_vs_thermo(o),  check_fidelity_pair(o),       check_geometry_sanity(o)};
}

std::vector<std::string> check_names() {
    return {"eq30",          "resonance",     "curvature-limit",
            "classical-oracle", "lmg-determinants", "eq63-fd",
            "finite-thermo", "fidelity-qmt",  "geometry"};
}

CheckResult run_named_check(const std::string& name, const CheckOptions& o) {
    if (name == "eq30") return check_anomaly_identity(o);
    if (name == "resonance") return check_resonance_equalities(o);
    if (name == "curvature-limit") return check_curvature_limits(o);
    if (name == "classical-oracle") return check_classical_oracle(o);
    if (name == "lmg-determinants") return check_lmg_determinants(o);
    if (name == "eq63-fd") return check_eq63_crosscheck(o);
    if (name == "finite-thermo") return check_finite_vs_thermo(o);
    if (name == "fidelity-qmt") return check_fidelity_pair(o);
    if (name == "geometry") return check_geometry_sanity(o);
    throw ConfigError("unknown check: " + name);
}

} // namespace qgeo::validation
