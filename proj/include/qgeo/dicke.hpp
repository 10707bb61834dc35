#pragma once

#include <array>

#include "qgeo/geometry.hpp"

namespace qgeo::dicke {

enum class Phase { normal, superradiant };

/// Dicke model parameters with hbar = 1; omega0 is the two-level splitting,
/// omega the field frequency, lambda the dipole coupling. The adiabatic
/// parameters are (omega, lambda); omega0 stays fixed.
struct DickeParams {
    double omega0 = 1.0;
    double omega = 1.0;
    double lambda = 0.0;
};

/// Critical coupling sqrt(omega*omega0)/2 separating the normal phase
/// (lambda below) from the superradiant phase (lambda above).
double critical_coupling(const DickeParams& p);

/// Normal frequencies, mixing angle, and their gradients with respect to
/// (omega, lambda). The angle is alpha = atan2(num, den)/2, which keeps the
/// soft mode attached to eps1 through sign changes of the denominator; in the
/// normal phase with omega < omega0 this lands in (-pi/4, pi/4).
struct NormalModeData {
    double eps1 = 0.0;
    double eps2 = 0.0;
    double alpha = 0.0;
    std::array<double, 2> grad_eps1{};   // (d/domega, d/dlambda)
    std::array<double, 2> grad_eps2{};
    std::array<double, 2> grad_alpha{};
};

/// Frequencies and angle for the requested phase, all gradients analytic.
/// Throws WrongPhase if lambda is on the wrong side of the critical coupling,
/// CriticalPoint exactly at it, and AngleSingular at omega == omega0 in the
/// normal phase (the resonant operations handle that line).
NormalModeData normal_mode_data(const DickeParams& p, Phase phase);

/// Classical metric: g_ij = di eps1 dj eps1/(8 eps1^2) I1^2
///                        + di eps2 dj eps2/(8 eps2^2) I2^2
///                        + di alpha dj alpha (eps1/eps2 + eps2/eps1) I1 I2.
MetricTensor2D classical_metric(const DickeParams& p, Phase phase,
                                const ActionAssignment& a = {});

/// Quantum metric: same first two terms with unit weights and angle weight
/// (eps1/eps2 + eps2/eps1)/4 - 1/2.
MetricTensor2D quantum_metric(const DickeParams& p, Phase phase);

/// The operator-ordering anomaly (1/2) di alpha dj alpha; with default actions,
/// classical_metric - quantum_metric equals this identically.
MetricTensor2D anomaly_term(const DickeParams& p, Phase phase);

struct ResonantMetrics {
    MetricTensor2D classical;
    MetricTensor2D quantum;
};

/// Metrics on the resonance line omega0 = omega. Normal phase uses the printed
/// closed forms of the limit alpha -> pi/4 (g12 and g22 are shared between the
/// classical and quantum tensors; g11 differs). Superradiant phase evaluates
/// the generic formulas at omega0 = omega, where they are regular.
/// Throws CriticalPoint at lambda == omega/2 and DomainViolation at lambda <= 0
/// in the normal phase (g11 has a pole at lambda = 0).
ResonantMetrics resonant_metrics(double omega, double lambda, Phase phase);

/// Ground state energy per pseudospin j: -omega0 in the normal phase,
/// -(2 lambda^2/omega + omega0^2 omega/(8 lambda^2)) in the superradiant one.
/// Both branches agree at the critical coupling.
double ground_state_energy(const DickeParams& p, double j);

// Metric fields over (omega, lambda) for the curvature routines. omega0 fixed.
MetricField quantum_metric_field(double omega0, Phase phase);
MetricField classical_metric_field(double omega0, Phase phase, const ActionAssignment& a = {});
// Resonant fields substitute omega0 = omega pointwise.
MetricField resonant_quantum_field(Phase phase);
MetricField resonant_classical_field(Phase phase);

} // namespace qgeo::dicke
