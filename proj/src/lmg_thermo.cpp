#include "qgeo/lmg_thermo.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qgeo::lmg {

namespace {

void check_params(const LmgParams& p) {
    if (!(p.h >= 0.0)) throw DomainViolation("LMG: h must be nonnegative");
    if (!(p.gamma > -1.0 && p.gamma < 1.0))
        throw DomainViolation("LMG: gamma must lie in (-1, 1)");
    if (!(p.j > 0.0)) throw DomainViolation("LMG: j must be positive");
}

} // namespace

LmgPhase phase_of(double h) {
    if (h == 1.0)
        throw CriticalPoint("LMG: h = 1 is the critical point; the truncated "
                            "Holstein-Primakoff Hamiltonians are not valid there");
    return h > 1.0 ? LmgPhase::symmetric : LmgPhase::broken;
}

double energy_surface(const LmgParams& p, double theta, double phi) {
    check_params(p);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    return -p.j * (2.0 * p.h * ct + st * st * (cp * cp + p.gamma * sp * sp));
}

std::vector<FixedPoint> fixed_points(const LmgParams& p) {
    check_params(p);
    const LmgPhase phase = phase_of(p.h);
    std::vector<FixedPoint> pts;
    if (phase == LmgPhase::symmetric) {
        pts.push_back({0.0, 0.0, FixedPoint::Kind::minimum, -2.0 * p.h * p.j});
        return pts;
    }
    const double theta0 = std::acos(p.h);
    const double e_min = -(1.0 + p.h * p.h) * p.j;
    pts.push_back({theta0, 0.0, FixedPoint::Kind::minimum, e_min});
    pts.push_back({theta0, std::numbers::pi, FixedPoint::Kind::minimum, e_min});
    pts.push_back({0.0, 0.0, FixedPoint::Kind::maximum, -2.0 * p.h * p.j});
    return pts;
}

double ground_energy(const LmgParams& p) {
    check_params(p);
    if (p.h < 1.0) return -(1.0 + p.h * p.h) * p.j;
    return -2.0 * p.h * p.j;
}

MetricPair symmetric_metrics(const LmgParams& p, const ActionAssignment& a) {
    check_params(p);
    if (!(p.h > 1.0)) {
        if (p.h == 1.0) throw CriticalPoint("LMG: h = 1 is the critical point");
        throw WrongPhase("LMG symmetric_metrics: h < 1 is the broken phase");
    }
    const double h = p.h, g = p.gamma;
    const double b11 = (1.0 / 32.0) * std::pow((1.0 - g) / ((h - 1.0) * (h - g)), 2);
    const double b12 = (1.0 - g) / (32.0 * (h - 1.0) * (h - g) * (h - g));
    const double b22 = 1.0 / (32.0 * (h - g) * (h - g));
    MetricPair out;
    out.quantum = {b11, b12, b22};
    out.classical = {a.I1sq * b11, a.I1sq * b12, a.I1sq * b22};
    return out;
}

MetricPair broken_metrics(const LmgParams& p, const ActionAssignment& a) {
    check_params(p);
    if (!(p.h < 1.0)) {
        if (p.h == 1.0) throw CriticalPoint("LMG: h = 1 is the critical point");
        throw WrongPhase("LMG broken_metrics: h > 1 is the symmetric phase");
    }
    const double h = p.h, g = p.gamma, j = p.j;
    const double u = 1.0 - h * h, v = 1.0 - g;
    const double K = h * (h * h - g);
    const double lead = j / std::sqrt(u * v);
    const double t11 = (1.0 / 32.0) * (K / (u * v)) * (K / (u * v));
    const double t12 = K / (32.0 * u * v * v);
    const double t22 = 1.0 / (32.0 * v * v);
    MetricPair out;
    out.quantum = {0.5 * lead + t11, t12, t22};
    out.classical = {a.I1 * lead + a.I1sq * t11, a.I1sq * t12, a.I1sq * t22};
    return out;
}

double broken_curvature(const LmgParams& p) {
    check_params(p);
    if (!(p.h < 1.0)) {
        if (p.h == 1.0) throw CriticalPoint("LMG: h = 1 is the critical point");
        throw WrongPhase("LMG broken_curvature: metric is degenerate in the symmetric phase");
    }
    const double h = p.h, g = p.gamma;
    const double h2 = h * h;
    const double num = 7.0 * h2 * h2 - (9.0 * g - 2.0) * h2 - 4.0 * (1.0 - g);
    const double den = p.j * std::sqrt((1.0 - h2) * (1.0 - g) * (1.0 - g) * (1.0 - g));
    return -4.0 + num / den;
}

MetricDerivatives broken_quantum_derivatives(const LmgParams& p) {
    check_params(p);
    if (!(p.h < 1.0)) {
        if (p.h == 1.0) throw CriticalPoint("LMG: h = 1 is the critical point");
        throw WrongPhase("LMG broken_quantum_derivatives: requires h < 1");
    }
    const double h = p.h, g = p.gamma, j = p.j;
    const double u = 1.0 - h * h, v = 1.0 - g;
    const double K = h * h * h - h * g;
    const double Kh = 3.0 * h * h - g;  // dK/dh; dK/dgamma = -h

    auto powm = [](double x, double e) { return std::pow(x, e); };
    const double um12 = powm(u, -0.5), um32 = powm(u, -1.5);
    const double um1 = 1.0 / u, um2 = um1 * um1, um3 = um2 * um1;
    const double vm12 = powm(v, -0.5), vm32 = powm(v, -1.5), vm52 = powm(v, -2.5);
    const double vm1 = 1.0 / v, vm2 = vm1 * vm1, vm3 = vm2 * vm1, vm4 = vm3 * vm1;

    MetricDerivatives d;
    d.g.g11 = 0.5 * j * um12 * vm12 + (K * K / 32.0) * um2 * vm2;
    d.g.g12 = (K / 32.0) * um1 * vm2;
    d.g.g22 = (1.0 / 32.0) * vm2;

    // d/dh
    d.d1[0] = 0.5 * j * h * um32 * vm12 +
              (1.0 / 16.0) * K * Kh * um2 * vm2 + (1.0 / 8.0) * h * K * K * um3 * vm2;
    d.d1[1] = ((Kh * um1 + 2.0 * h * K * um2) / 32.0) * vm2;
    d.d1[2] = 0.0;

    // d/dgamma (dv/dgamma = -1)
    d.d2[0] = 0.25 * j * um12 * vm32 +
              (1.0 / 16.0) * (-h * K * um2 * vm2 + K * K * um2 * vm3);
    d.d2[1] = (um1 / 32.0) * (-h * vm2 + 2.0 * K * vm3);
    d.d2[2] = (1.0 / 16.0) * vm3;

    d.d11_g22 = 0.0;
    d.d22_g11 = (3.0 * j / 8.0) * um12 * vm52 +
                (1.0 / 16.0) * (h * h * um2 * vm2 - 4.0 * h * K * um2 * vm3 +
                                3.0 * K * K * um2 * vm4);
    d.d12_g11 = 0.25 * j * h * um32 * vm32 +
                (1.0 / 16.0) * (-h * Kh - K) * um2 * vm2 + (1.0 / 8.0) * K * Kh * um2 * vm3 -
                0.25 * h * h * K * um3 * vm2 + 0.25 * h * K * K * um3 * vm3;
    d.d12_g12 = (um1 / 32.0) * (-vm2 + 2.0 * Kh * vm3) +
                (um2 / 16.0) * (-h * h * vm2 + 2.0 * h * K * vm3);
    return d;
}

MetricField broken_quantum_field(double j) {
    MetricField f;
    f.evaluator = [j](ParameterPoint p) {
        return broken_metrics({p.x1, p.x2, j}).quantum;
    };
    f.domain = [](ParameterPoint p) {
        return p.x1 >= 0.0 && p.x1 < 1.0 && p.x2 > -1.0 && p.x2 < 1.0;
    };
    return f;
}

double classical_hamiltonian_qp(const LmgParams& p, double Q, double P) {
    check_params(p);
    const double r2 = Q * Q + P * P;
    return -2.0 * p.h * p.j + p.h * r2 -
           (p.gamma * P * P + Q * Q) * (1.0 - r2 / (4.0 * p.j));
}

double rotated_classical_hamiltonian_qp(const LmgParams& p, double Q, double P) {
    check_params(p);
    if (p.h > 1.0)
        throw WrongPhase("LMG rotated Hamiltonian: defined for h <= 1 only");
    const double h = p.h, g = p.gamma, j = p.j;
    const double r2 = Q * Q + P * P;
    const double root = std::sqrt(1.0 - h * h);
    return -j * (1.0 + h * h) + (1.0 - g) * P * P + (1.0 - h * h) * Q * Q +
           (h / std::sqrt(j)) * root * Q * r2 * std::sqrt(1.0 - r2 / (4.0 * j)) +
           (r2 / (4.0 * j)) * (g * P * P + h * h * Q * Q - (1.0 - h * h) * r2);
}

} // namespace qgeo::lmg
