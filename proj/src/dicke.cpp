#include "qgeo/dicke.hpp"

#include <cmath>
#include <string>

namespace qgeo::dicke {

namespace {

void check_params(const DickeParams& p) {
    if (!(p.omega0 > 0.0) || !(p.omega > 0.0))
        throw DomainViolation("Dicke: omega0 and omega must be positive");
    if (!(p.lambda >= 0.0)) throw DomainViolation("Dicke: lambda must be nonnegative");
}

// Ingredients of the two-mode diagonalization: the squared frequencies are
// (S -+ D)/2 and the angle is atan2(N, C)/2, with D^2 = N^2 + C^2.
struct ModeIngredients {
    double S, C, N, D;
    std::array<double, 2> dS, dC, dN;
};

ModeIngredients normal_ingredients(const DickeParams& p) {
    const double w = p.omega, w0 = p.omega0, l = p.lambda;
    ModeIngredients m;
    m.S = w * w + w0 * w0;
    m.C = w0 * w0 - w * w;
    m.N = 4.0 * l * std::sqrt(w * w0);
    m.D = std::hypot(m.C, m.N);
    m.dS = {2.0 * w, 0.0};
    m.dC = {-2.0 * w, 0.0};
    m.dN = {2.0 * l * std::sqrt(w0 / w), 4.0 * std::sqrt(w * w0)};
    return m;
}

ModeIngredients superradiant_ingredients(const DickeParams& p) {
    const double w = p.omega, w0 = p.omega0, l = p.lambda;
    const double l4 = l * l * l * l;
    ModeIngredients m;
    m.S = 16.0 * l4 / (w * w) + w * w;
    m.C = 16.0 * l4 / (w * w) - w * w;
    m.N = 2.0 * w * w0;
    m.D = std::hypot(m.C, m.N);
    m.dS = {-32.0 * l4 / (w * w * w) + 2.0 * w, 64.0 * l * l * l / (w * w)};
    m.dC = {-32.0 * l4 / (w * w * w) - 2.0 * w, 64.0 * l * l * l / (w * w)};
    m.dN = {2.0 * w0, 0.0};
    return m;
}

NormalModeData from_ingredients(const ModeIngredients& m) {
    NormalModeData d;
    const double e1sq = 0.5 * (m.S - m.D);
    const double e2sq = 0.5 * (m.S + m.D);
    d.eps1 = std::sqrt(e1sq);
    d.eps2 = std::sqrt(e2sq);
    d.alpha = 0.5 * std::atan2(m.N, m.C);
    for (int i = 0; i < 2; ++i) {
        const double dD = (m.C * m.dC[i] + m.N * m.dN[i]) / m.D;
        d.grad_eps1[i] = (m.dS[i] - dD) / (4.0 * d.eps1);
        d.grad_eps2[i] = (m.dS[i] + dD) / (4.0 * d.eps2);
        d.grad_alpha[i] = 0.5 * (m.C * m.dN[i] - m.N * m.dC[i]) / (m.D * m.D);
    }
    return d;
}

MetricTensor2D assemble(const NormalModeData& d, double w1, double w2, double wa) {
    return outer(d.grad_eps1) * (w1 / (8.0 * d.eps1 * d.eps1)) +
           outer(d.grad_eps2) * (w2 / (8.0 * d.eps2 * d.eps2)) + outer(d.grad_alpha) * wa;
}

double frequency_ratio_sum(const NormalModeData& d) {
    return d.eps1 / d.eps2 + d.eps2 / d.eps1;
}

} // namespace

double critical_coupling(const DickeParams& p) {
    check_params(p);
    return 0.5 * std::sqrt(p.omega * p.omega0);
}

NormalModeData normal_mode_data(const DickeParams& p, Phase phase) {
    check_params(p);
    const double lc = critical_coupling(p);
    if (p.lambda == lc)
        throw CriticalPoint("Dicke: lambda equals the critical coupling " + std::to_string(lc) +
                            "; the quadratic Hamiltonians are not valid there");
    if (phase == Phase::normal) {
        if (p.lambda > lc) throw WrongPhase("Dicke: lambda > lambda_c is the superradiant phase");
        if (p.omega == p.omega0)
            throw AngleSingular("Dicke: omega == omega0 in the normal phase; "
                                "use the resonant operations");
        return from_ingredients(normal_ingredients(p));
    }
    if (p.lambda < lc) throw WrongPhase("Dicke: lambda < lambda_c is the normal phase");
    return from_ingredients(superradiant_ingredients(p));
}

MetricTensor2D classical_metric(const DickeParams& p, Phase phase, const ActionAssignment& a) {
    const NormalModeData d = normal_mode_data(p, phase);
    return assemble(d, a.I1sq, a.I2sq, frequency_ratio_sum(d) * (a.I1 * a.I2));
}

MetricTensor2D quantum_metric(const DickeParams& p, Phase phase) {
    const NormalModeData d = normal_mode_data(p, phase);
    return assemble(d, 1.0, 1.0, 0.25 * frequency_ratio_sum(d) - 0.5);
}

MetricTensor2D anomaly_term(const DickeParams& p, Phase phase) {
    const NormalModeData d = normal_mode_data(p, phase);
    return outer(d.grad_alpha) * 0.5;
}

ResonantMetrics resonant_metrics(double omega, double lambda, Phase phase) {
    if (!(omega > 0.0)) throw DomainViolation("Dicke resonant: omega must be positive");
    const double lc = 0.5 * omega;
    if (lambda == lc)
        throw CriticalPoint("Dicke resonant: lambda equals the critical coupling omega/2");

    if (phase == Phase::superradiant) {
        if (lambda < lc) throw WrongPhase("Dicke resonant: lambda < omega/2 is the normal phase");
        DickeParams p{omega, omega, lambda};
        ResonantMetrics r;
        r.classical = classical_metric(p, Phase::superradiant);
        r.quantum = quantum_metric(p, Phase::superradiant);
        return r;
    }

    if (lambda > lc) throw WrongPhase("Dicke resonant: lambda > omega/2 is the superradiant phase");
    if (!(lambda > 0.0))
        throw DomainViolation("Dicke resonant: normal-phase g11 has a pole at lambda = 0");

    // The alpha -> pi/4, omega0 -> omega limit evaluated through the generic
    // ingredients, which are regular on the resonance line. d alpha/d lambda
    // vanishes there exactly, so g12 and g22 come out identical between the
    // classical and quantum tensors, while g11 keeps the full 1/(32 lambda^2)
    // anomaly.
    const NormalModeData d =
        from_ingredients(normal_ingredients(DickeParams{omega, omega, lambda}));
    ResonantMetrics r;
    r.classical = assemble(d, 1.0, 1.0, frequency_ratio_sum(d) * 0.25);
    r.quantum = assemble(d, 1.0, 1.0, 0.25 * frequency_ratio_sum(d) - 0.5);
    return r;
}

double ground_state_energy(const DickeParams& p, double j) {
    check_params(p);
    if (!(j > 0.0)) throw DomainViolation("Dicke: j must be positive");
    const double lc = critical_coupling(p);
    if (p.lambda > lc) {
        const double l2 = p.lambda * p.lambda;
        return -j * (2.0 * l2 / p.omega + p.omega0 * p.omega0 * p.omega / (8.0 * l2));
    }
    return -j * p.omega0;
}

MetricField quantum_metric_field(double omega0, Phase phase) {
    MetricField f;
    f.evaluator = [omega0, phase](ParameterPoint p) {
        return quantum_metric({omega0, p.x1, p.x2}, phase);
    };
    f.domain = [omega0, phase](ParameterPoint p) {
        if (!(p.x1 > 0.0) || !(p.x2 >= 0.0)) return false;
        const double lc = 0.5 * std::sqrt(p.x1 * omega0);
        return phase == Phase::normal ? p.x2 < lc : p.x2 > lc;
    };
    return f;
}

MetricField classical_metric_field(double omega0, Phase phase, const ActionAssignment& a) {
    MetricField f;
    f.evaluator = [omega0, phase, a](ParameterPoint p) {
        return classical_metric({omega0, p.x1, p.x2}, phase, a);
    };
    f.domain = quantum_metric_field(omega0, phase).domain;
    return f;
}

namespace {
MetricField resonant_field(Phase phase, bool quantum) {
    MetricField f;
    f.evaluator = [phase, quantum](ParameterPoint p) {
        ResonantMetrics r = resonant_metrics(p.x1, p.x2, phase);
        return quantum ? r.quantum : r.classical;
    };
    f.domain = [phase](ParameterPoint p) {
        if (!(p.x1 > 0.0) || !(p.x2 > 0.0)) return false;
        const double lc = 0.5 * p.x1;
        return phase == Phase::normal ? p.x2 < lc : p.x2 > lc;
    };
    return f;
}
} // namespace

MetricField resonant_quantum_field(Phase phase) { return resonant_field(phase, true); }
MetricField resonant_classical_field(Phase phase) { return resonant_field(phase, false); }

} // namespace qgeo::dicke
