#include "qgeo/geometry.hpp"

#include <cmath>
#include <string>

#include "qgeo/threading.hpp"

namespace qgeo {

namespace {

// The printed two-dimensional curvature formula, kept as the A + B split:
//   R = (A + B)/sqrt(g)
//   A = d1[ (g12/g11) d2 g11 - d1 g22 ) / sqrt(g) ]
//   B = d2[ (2 d1 g12 - d2 g11 - (g12/g11) d1 g11) / sqrt(g) ]
// expanded in terms of the component derivatives.
double curvature_from_derivatives(const MetricDerivatives& d, double det) {
    const double u = d.g.g11, v = d.g.g12, w = d.g.g22;
    const double du1 = d.d1[0], dv1 = d.d1[1], dw1 = d.d1[2];
    const double du2 = d.d2[0], dv2 = d.d2[1], dw2 = d.d2[2];

    const double s = std::sqrt(det);
    const double s3 = s * det;

    const double ddet1 = du1 * w + u * dw1 - 2.0 * v * dv1;
    const double ddet2 = du2 * w + u * dw2 - 2.0 * v * dv2;

    // A-part
    const double inner1 = (v / u) * du2 - dw1;
    const double dinner1 =
        (dv1 / u - v * du1 / (u * u)) * du2 + (v / u) * d.d12_g11 - d.d11_g22;
    const double A = dinner1 / s - inner1 * ddet1 / (2.0 * s3);

    // B-part
    const double inner2 = 2.0 * dv1 - du2 - (v / u) * du1;
    const double dinner2 = 2.0 * d.d12_g12 - d.d22_g11 -
                           (dv2 / u - v * du2 / (u * u)) * du1 - (v / u) * d.d12_g11;
    const double B = dinner2 / s - inner2 * ddet2 / (2.0 * s3);

    return (A + B) / s;
}

} // namespace

CurvatureResult scalar_curvature_closed(const MetricDerivatives& d, double eps_det_rel) {
    const double det = d.g.determinant();
    const double eps = degeneracy_threshold(d.g, eps_det_rel);
    if (!(det > eps))
        throw DegenerateMetric("scalar_curvature_closed: metric determinant " +
                               std::to_string(det) + " at or below threshold " +
                               std::to_string(eps));
    double R = curvature_from_derivatives(d, det);
    if (!std::isfinite(R))
        throw DegenerateMetric("scalar_curvature_closed: curvature not finite");
    return {R, CurvatureMethod::closed_form, 0.0};
}

MetricDerivatives fd_derivatives(const MetricField& field, ParameterPoint p, double step) {
    if (!(step > 0.0)) throw DomainViolation("fd_derivatives: step must be positive");
    const double h = step;

    const ParameterPoint pts[13] = {
        {p.x1, p.x2},
        {p.x1 - 2 * h, p.x2}, {p.x1 - h, p.x2}, {p.x1 + h, p.x2}, {p.x1 + 2 * h, p.x2},
        {p.x1, p.x2 - 2 * h}, {p.x1, p.x2 - h}, {p.x1, p.x2 + h}, {p.x1, p.x2 + 2 * h},
        {p.x1 + h, p.x2 + h}, {p.x1 + h, p.x2 - h}, {p.x1 - h, p.x2 + h}, {p.x1 - h, p.x2 - h}};
    for (const auto& q : pts)
        if (!field.contains(q))
            throw DomainViolation("fd_derivatives: stencil point (" + std::to_string(q.x1) +
                                  ", " + std::to_string(q.x2) + ") outside the field domain");

    const MetricTensor2D c = field(pts[0]);
    const MetricTensor2D a_m2 = field(pts[1]), a_m1 = field(pts[2]), a_p1 = field(pts[3]),
                         a_p2 = field(pts[4]);
    const MetricTensor2D b_m2 = field(pts[5]), b_m1 = field(pts[6]), b_p1 = field(pts[7]),
                         b_p2 = field(pts[8]);
    const MetricTensor2D cpp = field(pts[9]), cpm = field(pts[10]), cmp = field(pts[11]),
                         cmm = field(pts[12]);

    auto comp = [](const MetricTensor2D& g, int k) {
        return k == 0 ? g.g11 : (k == 1 ? g.g12 : g.g22);
    };
    // Differences are grouped so that a constant field cancels exactly.
    auto d1c = [&](int k) {
        return ((comp(a_m2, k) - comp(a_p2, k)) + 8.0 * (comp(a_p1, k) - comp(a_m1, k))) /
               (12.0 * h);
    };
    auto d2c = [&](int k) {
        return ((comp(b_m2, k) - comp(b_p2, k)) + 8.0 * (comp(b_p1, k) - comp(b_m1, k))) /
               (12.0 * h);
    };
    auto d11c = [&](int k) {
        const double c0 = comp(c, k);
        return (16.0 * ((comp(a_m1, k) - c0) + (comp(a_p1, k) - c0)) -
                ((comp(a_m2, k) - c0) + (comp(a_p2, k) - c0))) /
               (12.0 * h * h);
    };
    auto d22c = [&](int k) {
        const double c0 = comp(c, k);
        return (16.0 * ((comp(b_m1, k) - c0) + (comp(b_p1, k) - c0)) -
                ((comp(b_m2, k) - c0) + (comp(b_p2, k) - c0))) /
               (12.0 * h * h);
    };
    auto d12c = [&](int k) {
        return ((comp(cpp, k) - comp(cpm, k)) - (comp(cmp, k) - comp(cmm, k))) /
               (4.0 * h * h);
    };

    MetricDerivatives d;
    d.g = c;
    d.d1 = {d1c(0), d1c(1), d1c(2)};
    d.d2 = {d2c(0), d2c(1), d2c(2)};
    d.d11_g22 = d11c(2);
    d.d22_g11 = d22c(0);
    d.d12_g11 = d12c(0);
    d.d12_g12 = d12c(1);
    return d;
}

CurvatureResult scalar_curvature_fd(const MetricField& field, ParameterPoint p, double step,
                                    const FdOptions& opts) {
    auto eval = [&](double h) {
        MetricDerivatives d = fd_derivatives(field, p, h);
        const double det = d.g.determinant();
        const double eps = degeneracy_threshold(d.g, opts.eps_det_rel);
        if (!(det > eps))
            throw DegenerateMetric("scalar_curvature_fd: metric determinant " +
                                   std::to_string(det) + " at or below threshold " +
                                   std::to_string(eps));
        return curvature_from_derivatives(d, det);
    };
    double R = eval(step);
    if (opts.refine) {
        // Leading error is O(step^2) (cross stencil); one Richardson level removes it.
        double R_half = eval(0.5 * step);
        R = (4.0 * R_half - R) / 3.0;
    }
    if (!std::isfinite(R)) throw DegenerateMetric("scalar_curvature_fd: curvature not finite");
    return {R, CurvatureMethod::finite_difference, step};
}

CurvatureGrid curvature_from_mesh(const MetricGrid& grid, double spacing1, double spacing2,
                                  double eps_det_rel, int nthreads) {
    if (grid.n1 < 5 || grid.n2 < 5)
        throw GridTooSmall("curvature_from_mesh: need at least a 5x5 grid, got " +
                           std::to_string(grid.n1) + "x" + std::to_string(grid.n2));
    if (!(spacing1 > 0.0) || !(spacing2 > 0.0))
        throw DomainViolation("curvature_from_mesh: spacings must be positive");
    if (grid.samples.size() != static_cast<std::size_t>(grid.n1) * grid.n2)
        throw DomainViolation("curvature_from_mesh: sample count does not match grid shape");

    CurvatureGrid out;
    out.n1 = grid.n1;
    out.n2 = grid.n2;
    out.cells.assign(grid.samples.size(), std::nullopt);

    auto comp = [](const MetricTensor2D& g, int k) {
        return k == 0 ? g.g11 : (k == 1 ? g.g12 : g.g22);
    };

    const int n1 = grid.n1, n2 = grid.n2;
    const double h1 = spacing1, h2 = spacing2;
    std::size_t interior = static_cast<std::size_t>(n1 - 4) * (n2 - 4);
    parallel_for(interior, [&](std::size_t idx) {
        const int i1 = 2 + static_cast<int>(idx / (n2 - 4));
        const int i2 = 2 + static_cast<int>(idx % (n2 - 4));

        MetricDerivatives d;
        d.g = grid.at(i1, i2);
        for (int k = 0; k < 3; ++k) {
            d.d1[k] = ((comp(grid.at(i1 - 2, i2), k) - comp(grid.at(i1 + 2, i2), k)) +
                       8.0 * (comp(grid.at(i1 + 1, i2), k) - comp(grid.at(i1 - 1, i2), k))) /
                      (12.0 * h1);
            d.d2[k] = ((comp(grid.at(i1, i2 - 2), k) - comp(grid.at(i1, i2 + 2), k)) +
                       8.0 * (comp(grid.at(i1, i2 + 1), k) - comp(grid.at(i1, i2 - 1), k))) /
                      (12.0 * h2);
        }
        const double c22 = comp(d.g, 2), c11 = comp(d.g, 0);
        d.d11_g22 = (16.0 * ((comp(grid.at(i1 - 1, i2), 2) - c22) +
                             (comp(grid.at(i1 + 1, i2), 2) - c22)) -
                     ((comp(grid.at(i1 - 2, i2), 2) - c22) +
                      (comp(grid.at(i1 + 2, i2), 2) - c22))) /
                    (12.0 * h1 * h1);
        d.d22_g11 = (16.0 * ((comp(grid.at(i1, i2 - 1), 0) - c11) +
                             (comp(grid.at(i1, i2 + 1), 0) - c11)) -
                     ((comp(grid.at(i1, i2 - 2), 0) - c11) +
                      (comp(grid.at(i1, i2 + 2), 0) - c11))) /
                    (12.0 * h2 * h2);
        auto cross = [&](int k) {
            return ((comp(grid.at(i1 + 1, i2 + 1), k) - comp(grid.at(i1 + 1, i2 - 1), k)) -
                    (comp(grid.at(i1 - 1, i2 + 1), k) - comp(grid.at(i1 - 1, i2 - 1), k))) /
                   (4.0 * h1 * h2);
        };
        d.d12_g11 = cross(0);
        d.d12_g12 = cross(1);

        const double det = d.g.determinant();
        if (!(det > degeneracy_threshold(d.g, eps_det_rel))) return;  // left absent
        double R = curvature_from_derivatives(d, det);
        if (!std::isfinite(R)) return;
        out.cells[static_cast<std::size_t>(i1) * n2 + i2] =
            CurvatureResult{R, CurvatureMethod::finite_difference, std::min(h1, h2)};
    }, nthreads);

    return out;
}

} // namespace qgeo
