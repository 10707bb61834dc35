#pragma once

#include <vector>

#include "qgeo/geometry.hpp"

namespace qgeo::lmg {

/// LMG parameters: transverse field h >= 0, anisotropy gamma in (-1, 1),
/// pseudospin j = N/2. Adiabatic parameters are (h, gamma). The phase is
/// symmetric for h > 1 and broken for h < 1; h = 1 is the critical point.
struct LmgParams {
    double h = 0.0;
    double gamma = 0.0;
    double j = 1.0;
};

enum class LmgPhase { symmetric, broken };

/// Phase of a transverse field value; throws CriticalPoint at h == 1.
LmgPhase phase_of(double h);

struct FixedPoint {
    double theta0 = 0.0;
    double phi0 = 0.0;
    enum class Kind { minimum, maximum, saddle } kind = Kind::minimum;
    double energy = 0.0;
};

/// Classical energy surface on the Bloch sphere:
/// H = -j [2 h cos(theta) + sin^2(theta) (cos^2(phi) + gamma sin^2(phi))].
double energy_surface(const LmgParams& p, double theta, double phi);

/// Extrema of the energy surface. Symmetric phase: the single minimum at
/// theta0 = 0. Broken phase: two degenerate minima at theta0 = arccos(h),
/// phi0 in {0, pi}, and the pole theta0 = 0 reported as a local maximum.
std::vector<FixedPoint> fixed_points(const LmgParams& p);

/// Ground energy per j: -(1 + h^2) for h < 1, -2h for h > 1, -2 at h = 1.
double ground_energy(const LmgParams& p);

struct MetricPair {
    MetricTensor2D classical;
    MetricTensor2D quantum;
};

/// Symmetric-phase (h > 1) metrics. The classical tensor carries I^2 = a.I1sq;
/// the quantum one has I^2 = 1. Both have exactly zero determinant.
MetricPair symmetric_metrics(const LmgParams& p, const ActionAssignment& a = {});

/// Broken-phase (0 <= h < 1) metrics. The leading term of g11 is j*I/sqrt(...)
/// classically and (j/2)/sqrt(...) quantum mechanically; the two coincide under
/// I = 1/2, I^2 = 1. det g_quantum = j / (64 sqrt((1-h^2)(1-gamma)^5)).
MetricPair broken_metrics(const LmgParams& p, const ActionAssignment& a = {});

/// Closed-form scalar curvature of the broken-phase metric:
/// R = -4 + [7 h^4 - (9 gamma - 2) h^2 - 4 (1 - gamma)] / (j sqrt((1-h^2)(1-gamma)^3)).
double broken_curvature(const LmgParams& p);

/// Analytic derivative bundle of the broken-phase quantum metric for the
/// closed-form curvature route.
MetricDerivatives broken_quantum_derivatives(const LmgParams& p);

/// Broken-phase quantum metric as a field over (h, gamma) at fixed j.
MetricField broken_quantum_field(double j);

/// Mean-field Hamiltonian in canonical (Q, P) coordinates,
/// H = -2hj + h(P^2+Q^2) - (gamma P^2 + Q^2)(1 - (P^2+Q^2)/(4j));
/// used for phase-space contour output only.
double classical_hamiltonian_qp(const LmgParams& p, double Q, double P);

/// Same Hamiltonian after rotating the z axis onto the broken-phase ground
/// state configuration; requires h <= 1.
double rotated_classical_hamiltonian_qp(const LmgParams& p, double Q, double P);

} // namespace qgeo::lmg
