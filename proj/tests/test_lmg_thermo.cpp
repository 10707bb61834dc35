#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgeo/geometry.hpp"
#include "qgeo/lmg_thermo.hpp"

using namespace qgeo;
using lmg::LmgParams;

TEST_CASE("energy surface values") {
    CHECK(lmg::energy_surface({2.0, 0.0, 1.0}, 0.0, 0.0) == doctest::Approx(-4.0));
    CHECK(lmg::energy_surface({0.5, 0.0, 1.0}, std::acos(0.5), 0.0) ==
          doctest::Approx(-1.25).epsilon(1e-12));
    CHECK(lmg::energy_surface({0.7, 0.3, 2.0}, std::numbers::pi / 2, std::numbers::pi / 2) ==
          doctest::Approx(-2.0 * 0.3).epsilon(1e-12));
}

TEST_CASE("fixed points in both phases") {
    const auto sym = lmg::fixed_points({1.3, 0.1, 1.0});
    REQUIRE(sym.size() == 1);
    CHECK(sym[0].kind == lmg::FixedPoint::Kind::minimum);
    CHECK(sym[0].theta0 == 0.0);
    CHECK(sym[0].energy == doctest::Approx(-2.6).epsilon(1e-12));

    const auto br = lmg::fixed_points({0.3, 0.1, 1.0});
    REQUIRE(br.size() == 3);
    CHECK(br[0].kind == lmg::FixedPoint::Kind::minimum);
    CHECK(br[0].theta0 == doctest::Approx(std::acos(0.3)).epsilon(1e-12));
    CHECK(br[0].phi0 == 0.0);
    CHECK(br[0].energy == doctest::Approx(-1.09).epsilon(1e-12));
    CHECK(br[1].kind == lmg::FixedPoint::Kind::minimum);
    CHECK(br[1].phi0 == doctest::Approx(std::numbers::pi));
    CHECK(br[2].kind == lmg::FixedPoint::Kind::maximum);
    CHECK(br[2].theta0 == 0.0);

    const auto z = lmg::fixed_points({0.0, 0.0, 1.0});
    CHECK(z[0].theta0 == doctest::Approx(std::numbers::pi / 2));

    CHECK_THROWS_AS(lmg::fixed_points({1.0, 0.1, 1.0}), CriticalPoint);
}

TEST_CASE("ground energy branches") {
    CHECK(lmg::ground_energy({0.5, 0.0, 1.0}) == doctest::Approx(-1.25));
    CHECK(lmg::ground_energy({1.0, 0.0, 1.0}) == -2.0);
    CHECK(lmg::ground_energy({2.0, 0.0, 1.0}) == -4.0);
    // second derivative in h jumps from -2j to 0 across h = 1
    const double j = 3.0, d = 1e-4;
    auto d2 = [&](double h) {
        return (lmg::ground_energy({h + d, 0.0, j}) - 2.0 * lmg::ground_energy({h, 0.0, j}) +
                lmg::ground_energy({h - d, 0.0, j})) /
               (d * d);
    };
    CHECK(d2(0.8) == doctest::Approx(-2.0 * j).epsilon(1e-6));
    CHECK(d2(1.2) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("symmetric-phase metrics: values, zero determinant, divergences") {
    const auto m = lmg::symmetric_metrics({2.0, 0.0, 1.0});
    CHECK(m.quantum.g11 == doctest::Approx(1.0 / 128.0).epsilon(1e-14));
    CHECK(m.quantum.g12 == doctest::Approx(1.0 / 128.0).epsilon(1e-14));
    CHECK(m.quantum.g22 == doctest::Approx(1.0 / 128.0).epsilon(1e-14));

    for (double h : {1.2, 1.7, 2.6})
        for (double g : {-0.7, 0.0, 0.6}) {
            const auto mm = lmg::symmetric_metrics({h, g, 1.0});
            const double scale = mm.quantum.g11 * mm.quantum.g22;
            CHECK(std::abs(mm.quantum.determinant()) < 1e-15 * scale);
            // classical == quantum under the action identifications
            CHECK(mm.classical.g11 == mm.quantum.g11);
            CHECK(mm.classical.g12 == mm.quantum.g12);
            CHECK(mm.classical.g22 == mm.quantum.g22);
        }

    const auto near = lmg::symmetric_metrics({1.0 + 1e-9, 0.0, 1.0});
    CHECK(near.quantum.g11 > 1e15);
    CHECK(near.quantum.g12 > 1e6);
    CHECK(near.quantum.g22 == doctest::Approx(1.0 / 32.0).epsilon(1e-8));

    CHECK_THROWS_AS(lmg::symmetric_metrics({0.5, 0.0, 1.0}), WrongPhase);
    CHECK_THROWS_AS(lmg::symmetric_metrics({1.0, 0.0, 1.0}), CriticalPoint);
}

TEST_CASE("broken-phase metrics: values and determinant formula") {
    const auto m = lmg::broken_metrics({0.0, 0.0, 1.0});
    CHECK(m.quantum.g11 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.quantum.g12 == 0.0);
    CHECK(m.quantum.g22 == doctest::Approx(1.0 / 32.0).epsilon(1e-14));

    for (double h : {0.0, 0.3, 0.9})
        for (double g : {-0.7, 0.2}) {
            for (double j : {1.0, 42.0}) {
                const auto mm = lmg::broken_metrics({h, g, j});
                const double expect =
                    j / (64.0 * std::sqrt((1.0 - h * h) * std::pow(1.0 - g, 5)));
                CHECK(mm.quantum.determinant() == doctest::Approx(expect).epsilon(1e-12));
                CHECK(mm.classical.g11 == mm.quantum.g11);
                CHECK(mm.classical.g12 == mm.quantum.g12);
                CHECK(mm.classical.g22 == mm.quantum.g22);
                // g22 does not feel h at all
                CHECK(mm.quantum.g22 == lmg::broken_metrics({0.5, g, j}).quantum.g22);
            }
        }
    CHECK_THROWS_AS(lmg::broken_metrics({1.5, 0.0, 1.0}), WrongPhase);
}

TEST_CASE("closed-form broken curvature") {
    CHECK(lmg::broken_curvature({0.0, 0.0, 1.0}) == doctest::Approx(-8.0).epsilon(1e-14));
    CHECK(lmg::broken_curvature({0.0, 0.0, 1e9}) == doctest::Approx(-4.0).epsilon(1e-8));
    CHECK(std::abs(lmg::broken_curvature({1.0 - 1e-12, 0.0, 1.0})) > 1e3);
    CHECK_THROWS_AS(lmg::broken_curvature({1.5, 0.0, 1.0}), WrongPhase);
    CHECK_THROWS_AS(lmg::broken_curvature({1.0, 0.0, 1.0}), CriticalPoint);
}

TEST_CASE("broken-phase analytic derivatives match finite differences") {
    const LmgParams p{0.4, -0.3, 7.0};
    const auto d = lmg::broken_quantum_derivatives(p);
    const double s = 1e-6;
    auto quantum = [&](double h, double g) { return lmg::broken_metrics({h, g, p.j}).quantum; };
    const auto ghp = quantum(p.h + s, p.gamma), ghm = quantum(p.h - s, p.gamma);
    const auto ggp = quantum(p.h, p.gamma + s), ggm = quantum(p.h, p.gamma - s);
    CHECK(d.d1[0] == doctest::Approx((ghp.g11 - ghm.g11) / (2 * s)).epsilon(1e-7));
    CHECK(d.d1[1] == doctest::Approx((ghp.g12 - ghm.g12) / (2 * s)).epsilon(1e-7));
    CHECK(d.d1[2] == 0.0);
    CHECK(d.d2[0] == doctest::Approx((ggp.g11 - ggm.g11) / (2 * s)).epsilon(1e-7));
    CHECK(d.d2[1] == doctest::Approx((ggp.g12 - ggm.g12) / (2 * s)).epsilon(1e-7));
    CHECK(d.d2[2] == doctest::Approx((ggp.g22 - ggm.g22) / (2 * s)).epsilon(1e-7));

    const double s2 = 1e-4;
    auto g11_at = [&](double h, double g) { return quantum(h, g).g11; };
    auto g12_at = [&](double h, double g) { return quantum(h, g).g12; };
    const double d22g11_fd = (g11_at(p.h, p.gamma + s2) - 2 * g11_at(p.h, p.gamma) +
                              g11_at(p.h, p.gamma - s2)) /
                             (s2 * s2);
    CHECK(d.d22_g11 == doctest::Approx(d22g11_fd).epsilon(1e-6));
    const double d12g11_fd =
        (g11_at(p.h + s2, p.gamma + s2) - g11_at(p.h + s2, p.gamma - s2) -
         g11_at(p.h - s2, p.gamma + s2) + g11_at(p.h - s2, p.gamma - s2)) /
        (4 * s2 * s2);
    CHECK(d.d12_g11 == doctest::Approx(d12g11_fd).epsilon(1e-6));
    const double d12g12_fd =
        (g12_at(p.h + s2, p.gamma + s2) - g12_at(p.h + s2, p.gamma - s2) -
         g12_at(p.h - s2, p.gamma + s2) + g12_at(p.h - s2, p.gamma - s2)) /
        (4 * s2 * s2);
    CHECK(d.d12_g12 == doctest::Approx(d12g12_fd).epsilon(1e-6));
}

TEST_CASE("closed-form curvature equals the curvature formula on closed derivatives") {
    for (double h : {0.1, 0.5, 0.8})
        for (double g : {-0.6, 0.0, 0.5})
            for (double j : {1.0, 100.0}) {
                const LmgParams p{h, g, j};
                const double via_formula =
                    scalar_curvature_closed(lmg::broken_quantum_derivatives(p)).R;
                CHECK(via_formula == doctest::Approx(lmg::broken_curvature(p)).epsilon(1e-10));
            }
}

TEST_CASE("phase-space Hamiltonians") {
    // the origin carries the symmetric-phase ground energy
    CHECK(lmg::classical_hamiltonian_qp({1.3, 0.1, 1.0}, 0.0, 0.0) ==
          doctest::Approx(-2.6).epsilon(1e-12));
    // broken phase: the minima sit at Q^2 = 2j(1 - h), P = 0, at energy -(1+h^2)j
    const LmgParams p{0.3, 0.1, 1.0};
    const double qmin = std::sqrt(2.0 * p.j * (1.0 - p.h));
    CHECK(lmg::classical_hamiltonian_qp(p, qmin, 0.0) ==
          doctest::Approx(-(1.0 + p.h * p.h) * p.j).epsilon(1e-12));
    // the rotated Hamiltonian has its minimum at the origin instead
    CHECK(lmg::rotated_classical_hamiltonian_qp(p, 0.0, 0.0) ==
          doctest::Approx(-(1.0 + p.h * p.h) * p.j).epsilon(1e-12));
    CHECK_THROWS_AS(lmg::rotated_classical_hamiltonian_qp({1.5, 0.1, 1.0}, 0.0, 0.0),
                    WrongPhase);
}
