#include <doctest.h>

#include <cmath>

#include "qgeo/geometry.hpp"
#include "qgeo/lmg_thermo.hpp"

using namespace qgeo;

namespace {

MetricDerivatives sphere_derivatives(double t) {
    MetricDerivatives d;
    d.g = {1.0, 0.0, std::sin(t) * std::sin(t)};
    d.d1 = {0.0, 0.0, std::sin(2.0 * t)};
    d.d11_g22 = 2.0 * std::cos(2.0 * t);
    return d;
}

MetricField sphere_field() {
    MetricField f;
    f.evaluator = [](ParameterPoint p) {
        return MetricTensor2D{1.0, 0.0, std::sin(p.x1) * std::sin(p.x1)};
    };
    return f;
}

MetricField hyperbolic_field() {
    MetricField f;
    f.evaluator = [](ParameterPoint p) {
        return MetricTensor2D{1.0, 0.0, std::sinh(p.x1) * std::sinh(p.x1)};
    };
    return f;
}

} // namespace

TEST_CASE("determinant of simple tensors") {
    CHECK(determinant({1.0, 0.0, 1.0}) == 1.0);
    // symmetric-phase LMG metric at h = 2, gamma = 0: all entries 1/128
    const double e = 1.0 / 128.0;
    CHECK(determinant({e, e, e}) == 0.0);
    // broken-phase LMG at h = 0, gamma = 0, j = 1
    CHECK(determinant({0.5, 0.0, 1.0 / 32.0}) == doctest::Approx(1.0 / 64.0).epsilon(1e-14));
}

TEST_CASE("flat metric has exactly zero curvature on both routes") {
    MetricDerivatives flat;
    flat.g = {1.0, 0.0, 1.0};
    const CurvatureResult closed = scalar_curvature_closed(flat);
    CHECK(closed.R == 0.0);
    CHECK(closed.method == CurvatureMethod::closed_form);
    CHECK(closed.step == 0.0);

    MetricField f;
    f.evaluator = [](ParameterPoint) { return MetricTensor2D{2.0, 0.3, 1.0}; };
    CHECK(scalar_curvature_fd(f, {0.2, -0.4}, 1e-3).R == 0.0);
}

TEST_CASE("unit sphere and hyperbolic plane") {
    CHECK(scalar_curvature_closed(sphere_derivatives(1.0)).R == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(scalar_curvature_closed(sphere_derivatives(0.4)).R == doctest::Approx(2.0).epsilon(1e-12));

    const CurvatureResult fd = scalar_curvature_fd(sphere_field(), {1.0, 0.0}, 1e-4);
    CHECK(fd.R == doctest::Approx(2.0).epsilon(5e-7));
    CHECK(fd.step == 1e-4);

    MetricDerivatives hyp;
    hyp.g = {1.0, 0.0, std::sinh(1.2) * std::sinh(1.2)};
    hyp.d1 = {0.0, 0.0, std::sinh(2.4)};
    hyp.d11_g22 = 2.0 * std::cosh(2.4);
    CHECK(scalar_curvature_closed(hyp).R == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(scalar_curvature_fd(hyperbolic_field(), {1.2, 0.0}, 1e-4).R ==
          doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("finite differences converge at second order or better") {
    const double e1 = std::abs(scalar_curvature_fd(sphere_field(), {1.0, 0.0}, 4e-3).R - 2.0);
    const double e2 = std::abs(scalar_curvature_fd(sphere_field(), {1.0, 0.0}, 2e-3).R - 2.0);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 1.8);
}

TEST_CASE("closed and finite-difference routes agree on the broken LMG metric") {
    const lmg::LmgParams p{0.5, -0.5, 100.0};
    const double closed = scalar_curvature_closed(lmg::broken_quantum_derivatives(p)).R;
    const double fd = scalar_curvature_fd(lmg::broken_quantum_field(100.0), {0.5, -0.5}, 1e-4).R;
    CHECK(fd == doctest::Approx(closed).epsilon(1e-5));
    CHECK(closed == doctest::Approx(lmg::broken_curvature(p)).epsilon(1e-10));
}

TEST_CASE("curvature is invariant under relabeling the two parameters") {
    // swap x1 <-> x2 on the sphere: g = diag(sin^2 x2, 1)
    MetricField swapped;
    swapped.evaluator = [](ParameterPoint p) {
        return MetricTensor2D{std::sin(p.x2) * std::sin(p.x2), 0.0, 1.0};
    };
    const double a = scalar_curvature_fd(sphere_field(), {1.0, 0.3}, 1e-4).R;
    const double b = scalar_curvature_fd(swapped, {0.3, 1.0}, 1e-4).R;
    CHECK(a == doctest::Approx(b).epsilon(1e-10));

    // same check on a metric with all components active
    MetricField plain, swapped2;
    plain.evaluator = [](ParameterPoint p) {
        const double u = p.x1, v = p.x2;
        return MetricTensor2D{2.0 + u * u, 0.3 * u * v, 1.0 + v * v + u};
    };
    swapped2.evaluator = [&](ParameterPoint p) {
        const double u = p.x2, v = p.x1;
        return MetricTensor2D{1.0 + v * v + u, 0.3 * u * v, 2.0 + u * u};
    };
    const double c = scalar_curvature_fd(plain, {0.4, 0.7}, 1e-4).R;
    const double d = scalar_curvature_fd(swapped2, {0.7, 0.4}, 1e-4).R;
    CHECK(c == doctest::Approx(d).epsilon(1e-8));
}

TEST_CASE("degenerate metrics are rejected, not returned as NaN") {
    MetricDerivatives deg;
    deg.g = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(scalar_curvature_closed(deg), DegenerateMetric);

    MetricField f;
    f.evaluator = [](ParameterPoint) { return MetricTensor2D{1.0, 1.0, 1.0}; };
    CHECK_THROWS_AS(scalar_curvature_fd(f, {0.0, 0.0}, 1e-3), DegenerateMetric);
}

TEST_CASE("stencils respect the declared domain") {
    MetricField f = sphere_field();
    f.domain = [](ParameterPoint p) { return p.x1 > 1.0; };
    CHECK_THROWS_AS(scalar_curvature_fd(f, {1.0001, 0.0}, 1e-3), DomainViolation);
    CHECK_NOTHROW(scalar_curvature_fd(f, {1.5, 0.0}, 1e-3));
}

TEST_CASE("richardson refinement removes the leading cross-stencil error") {
    // needs a metric whose mixed partials actually enter the formula
    MetricField f;
    f.evaluator = [](ParameterPoint p) {
        const double u = p.x1, v = p.x2;
        return MetricTensor2D{2.0 + u * u, 0.3 * u * v, 1.0 + v * v + u};
    };
    FdOptions o;
    o.refine = true;
    const double ref = scalar_curvature_fd(f, {0.4, 0.7}, 1e-4, o).R;
    const double plain = std::abs(scalar_curvature_fd(f, {0.4, 0.7}, 8e-3).R - ref);
    const double refined = std::abs(scalar_curvature_fd(f, {0.4, 0.7}, 8e-3, o).R - ref);
    CHECK(refined < plain);
}

TEST_CASE("mesh curvature: constant grid, sphere grid, border handling") {
    SUBCASE("too small") {
        MetricGrid g;
        g.n1 = 4;
        g.n2 = 5;
        g.samples.assign(20, {1.0, 0.0, 1.0});
        CHECK_THROWS_AS(curvature_from_mesh(g, 0.1, 0.1), GridTooSmall);
    }

    SUBCASE("constant identity grid") {
        MetricGrid g;
        g.n1 = 7;
        g.n2 = 6;
        g.samples.assign(42, {1.0, 0.0, 1.0});
        const CurvatureGrid r = curvature_from_mesh(g, 0.05, 0.05);
        for (int i1 = 0; i1 < g.n1; ++i1)
            for (int i2 = 0; i2 < g.n2; ++i2) {
                const bool interior = i1 >= 2 && i1 + 2 < g.n1 && i2 >= 2 && i2 + 2 < g.n2;
                CHECK(r.at(i1, i2).has_value() == interior);
                if (interior) CHECK(r.at(i1, i2)->R == 0.0);
            }
    }

    SUBCASE("sphere grid") {
        MetricGrid g;
        g.n1 = 21;
        g.n2 = 5;
        const double h = 0.01;
        g.samples.resize(static_cast<std::size_t>(g.n1) * g.n2);
        for (int i1 = 0; i1 < g.n1; ++i1)
            for (int i2 = 0; i2 < g.n2; ++i2) {
                const double t = 1.0 + i1 * h;
                g.samples[static_cast<std::size_t>(i1) * g.n2 + i2] = {
                    1.0, 0.0, std::sin(t) * std::sin(t)};
            }
        const CurvatureGrid r = curvature_from_mesh(g, h, h);
        for (int i1 = 2; i1 + 2 < g.n1; ++i1)
            CHECK(r.at(i1, 2)->R == doctest::Approx(2.0).epsilon(1e-4));
    }
}

TEST_CASE("psd helper flags indefinite tensors") {
    CHECK(MetricTensor2D{1.0, 0.2, 1.0}.is_psd());
    CHECK_FALSE(MetricTensor2D{1.0, 2.0, 1.0}.is_psd());
    CHECK(MetricTensor2D{1.0, 0.2, 1.0}.min_eigenvalue() == doctest::Approx(0.8));
}
