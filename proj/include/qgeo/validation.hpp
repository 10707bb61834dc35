#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgeo::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst measured value vs tolerance, human readable
};

struct CheckOptions {
    std::uint64_t seed = 20210901;
    int points_per_phase = 100;  // anomaly-identity sample size
    int oracle_points = 10;      // torus-oracle sample size per phase
    int oracle_angles = 256;
    double tol_anomaly = 1e-12;
    double tol_resonance_eq = 1e-14;
    double min_resonance_gap = 1e-6;
    double tol_curvature_limit = 0.1;   // |R + 4| near lambda_c
    double min_resonant_R = 1e3;
    double tol_oracle = 1e-6;
    double tol_sym_det = 1e-15;
    double tol_broken_det = 1e-12;
    double tol_eq63 = 1e-5;
    double tol_finite_thermo = 0.05;
    double tol_fidelity = 1e-3;
    double fidelity_delta = 1e-3;
    double tol_sphere_closed = 1e-8;
    double tol_sphere_fd = 1e-4;
    int nthreads = 0;
};

// Each check is self-contained and deterministic for a fixed seed.
CheckResult check_anomaly_identity(const CheckOptions& o = {});        // Dicke class-quant relation
CheckResult check_resonance_equalities(const CheckOptions& o = {});    // shared resonant components
CheckResult check_curvature_limits(const CheckOptions& o = {});        // R -> -4 and resonant divergence
CheckResult check_classical_oracle(const CheckOptions& o = {});        // torus average vs closed form
CheckResult check_lmg_determinants(const CheckOptions& o = {});        // degenerate / closed-form dets
CheckResult check_eq63_crosscheck(const CheckOptions& o = {});         // closed R vs finite differences
CheckResult check_finite_vs_thermo(const CheckOptions& o = {});        // j = 500 QMT vs closed form
CheckResult check_fidelity_pair(const CheckOptions& o = {});           // perturbative vs overlap oracle
CheckResult check_geometry_sanity(const CheckOptions& o = {});         // flat / sphere / hyperbolic

/// All of the above, in a fixed order.
std::vector<CheckResult> run_all_checks(const CheckOptions& o = {});

/// Names accepted by run_named_check / the CLI --only flag.
std::vector<std::string> check_names();
CheckResult run_named_check(const std::string& name, const CheckOptions& o = {});

} // namespace qgeo::validation
