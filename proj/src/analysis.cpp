#include "qgeo/analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "qgeo/threading.hpp"

namespace qgeo::analysis {

const std::vector<std::optional<double>>& SweepResult::column(const std::string& name) const {
    for (std::size_t k = 0; k < column_names.size(); ++k)
        if (column_names[k] == name) return columns[k];
    throw ConfigError("sweep column not found: " + name);
}

SweepResult sweep(const std::string& axis, std::vector<double> grid,
                  std::vector<std::string> column_names,
                  const std::function<std::vector<std::optional<double>>(double)>& point_fn,
                  std::map<std::string, double> fixed, int nthreads) {
    SweepResult out;
    out.axis = axis;
    out.grid = std::move(grid);
    out.column_names = std::move(column_names);
    out.fixed = std::move(fixed);
    out.columns.assign(out.column_names.size(),
                       std::vector<std::optional<double>>(out.grid.size()));
    parallel_for(out.grid.size(), [&](std::size_t i) {
        std::vector<std::optional<double>> row;
        try {
            row = point_fn(out.grid[i]);
        } catch (const Error&) {
            row.assign(out.column_names.size(), std::nullopt);
        }
        if (row.size() != out.column_names.size())
            throw ConfigError("sweep: point function returned wrong column count");
        for (std::size_t c = 0; c < row.size(); ++c) out.columns[c][i] = row[c];
    }, nthreads);
    return out;
}

namespace {

// Vertex of the parabola through three (possibly unevenly spaced) points.
struct Parabola {
    double x, y;
};

Parabola parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = x1 - x0, d12 = x2 - x1, d02 = x2 - x0;
    const double s01 = (y1 - y0) / d01, s12 = (y2 - y1) / d12;
    const double curv = (s12 - s01) / d02;  // half the second derivative
    if (curv == 0.0) return {x1, y1};
    const double xv = 0.5 * (x0 + x1) - s01 / (2.0 * curv);
    const double yv = y0 + s01 * (xv - x0) + curv * (xv - x0) * (xv - x1);
    return {xv, yv};
}

struct GoldenResult {
    double x, y;
};

// Golden-section extremum search on [a, b]; sense = +1 for maximum.
GoldenResult golden_polish(const std::function<double(double)>& f, double a, double b,
                           double sense, double xtol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = sense * f(x1), f2 = sense * f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = sense * f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = sense * f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

} // namespace

std::vector<Peak> find_peaks(std::span<const double> xs,
                             std::span<const std::optional<double>> ys,
                             const std::function<double(double)>& evaluator,
                             const PeakOptions& opts) {
    std::vector<Peak> peaks;
    const std::size_t n = xs.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!ys[i - 1] || !ys[i] || !ys[i + 1]) continue;
        const double y0 = *ys[i - 1], y1 = *ys[i], y2 = *ys[i + 1];
        double sense;
        if (y1 > y0 && y1 > y2) sense = 1.0;
        else if (y1 < y0 && y1 < y2) sense = -1.0;
        else continue;
        if (std::min(std::abs(y1 - y0), std::abs(y1 - y2)) < opts.prominence) continue;

        Parabola v = parabolic_vertex(xs[i - 1], y0, xs[i], y1, xs[i + 1], y2);
        double loc = std::clamp(v.x, xs[i - 1], xs[i + 1]);
        double height = v.y;
        if (evaluator) {
            GoldenResult g = golden_polish(evaluator, xs[i - 1], xs[i + 1], sense, opts.xtol);
            loc = g.x;
            height = g.y;
        }
        Peak pk;
        pk.location = loc;
        pk.height = height;
        pk.kind = sense > 0 ? Peak::Kind::maximum : Peak::Kind::minimum;
        peaks.push_back(pk);
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.location < b.location; });
    for (std::size_t k = 0; k < peaks.size(); ++k) peaks[k].index = static_cast<int>(k);
    return peaks;
}

std::vector<Peak> find_peaks(const SweepResult& s, const std::string& quantity,
                             const std::function<double(double)>& evaluator,
                             const PeakOptions& opts) {
    return find_peaks(s.grid, s.column(quantity), evaluator, opts);
}

const char* fit_model_name(FitModel m) {
    switch (m) {
        case FitModel::poly2: return "poly2";
        case FitModel::rat1: return "rat1";
        case FitModel::rat1f: return "rat1f";
        case FitModel::rat2f: return "rat2f";
        case FitModel::power: return "power";
        case FitModel::loglin: return "loglin";
        case FitModel::lin: return "lin";
    }
    return "?";
}

namespace {

std::vector<double> solve_linear_ls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < A.cols())
        throw SingularFit("fit: rank-deficient design matrix (" +
                          std::to_string(qr.rank()) + " < " + std::to_string(A.cols()) + ")");
    Eigen::VectorXd x = qr.solve(b);
    return {x.data(), x.data() + x.size()};
}

double rms(const Eigen::VectorXd& r) {
    return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

// Damped Gauss-Newton on a generic residual model. Deterministic: fixed
// iteration and halving limits, no randomness.
template <typename ModelFn, typename JacFn>
void gauss_newton(std::vector<double>& p, std::span<const double> xs,
                  std::span<const double> ys, ModelFn model, JacFn jac) {
    const int n = static_cast<int>(xs.size());
    const int m = static_cast<int>(p.size());
    auto sse = [&](const std::vector<double>& q) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = model(q, xs[i]) - ys[i];
            s += r * r;
        }
        return s;
    };
    double current = sse(p);
    for (int iter = 0; iter < 200; ++iter) {
        Eigen::MatrixXd J(n, m);
        Eigen::VectorXd r(n);
        for (int i = 0; i < n; ++i) {
            jac(p, xs[i], J.row(i));
            r(i) = model(p, xs[i]) - ys[i];
        }
        Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r);
        if (!step.allFinite()) break;
        double scale = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 25; ++halving) {
            std::vector<double> trial = p;
            for (int k = 0; k < m; ++k) trial[k] += scale * step(k);
            const double s = sse(trial);
            if (s < current) {
                p = trial;
                improved = true;
                const double rel = std::abs(current - s) / std::max(current, 1e-300);
                current = s;
                if (rel < 1e-14) return;
                break;
            }
            scale *= 0.5;
        }
        if (!improved) return;
    }
}

} // namespace

FitResult fit(FitModel model, std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw SingularFit("fit: x/y size mismatch");
    const int n = static_cast<int>(xs.size());
    const auto need = [&](int ncoef) {
        if (n < ncoef + 1)
            throw SingularFit("fit(" + std::string(fit_model_name(model)) + "): " +
                              std::to_string(n) + " points cannot determine " +
                              std::to_string(ncoef) + " coefficients");
    };

    switch (model) {
        case FitModel::lin: {
            need(2);
            Eigen::MatrixXd A(n, 2);
            Eigen::VectorXd b(n);
            for (int i = 0; i < n; ++i) {
                A(i, 0) = 1.0;
                A(i, 1) = xs[i];
                b(i) = ys[i];
            }
            FitResult f;
            f.model = model;
            f.coefficients = solve_linear_ls(A, b);
            f.residual = rms(A * Eigen::Map<const Eigen::VectorXd>(f.coefficients.data(), 2) - b);
            return f;
        }
        case FitModel::poly2: {
            need(3);
            Eigen::MatrixXd A(n, 3);
            Eigen::VectorXd b(n);
            for (int i = 0; i < n; ++i) {
                A(i, 0) = 1.0;
                A(i, 1) = xs[i];
                A(i, 2) = xs[i] * xs[i];
                b(i) = ys[i];
            }
            FitResult f;
            f.model = model;
            f.coefficients = solve_linear_ls(A, b);
            f.residual = rms(A * Eigen::Map<const Eigen::VectorXd>(f.coefficients.data(), 3) - b);
            return f;
        }
        case FitModel::rat1f:
        case FitModel::rat2f: {
            need(2);
            const double e = model == FitModel::rat1f ? 1.0 : 2.0;
            Eigen::MatrixXd A(n, 2);
            Eigen::VectorXd b(n);
            for (int i = 0; i < n; ++i) {
                if (xs[i] == 1.0) throw SingularFit("fit: point on the fixed pole x = 1");
                A(i, 0) = 1.0;
                A(i, 1) = std::pow(xs[i] - 1.0, -e);
                b(i) = ys[i];
            }
            FitResult f;
            f.model = model;
            f.coefficients = solve_linear_ls(A, b);
            f.residual = rms(A * Eigen::Map<const Eigen::VectorXd>(f.coefficients.data(), 2) - b);
            return f;
        }
        case FitModel::loglin: {
            need(2);
            Eigen::MatrixXd A(n, 2);
            Eigen::VectorXd b(n);
            std::vector<double> ay(n);
            for (int i = 0; i < n; ++i) {
                if (!(xs[i] > 0.0)) throw SingularFit("fit(loglin): x must be positive");
                if (ys[i] == 0.0) throw SingularFit("fit(loglin): zero y value");
                A(i, 0) = std::log(xs[i]);
                A(i, 1) = 1.0;
                b(i) = std::log(std::abs(ys[i]));
                ay[i] = std::abs(ys[i]);
            }
            // The log-space linear solution seeds a least-squares pass on
            // |y| = exp(n) x^m itself; pure log-space weighting understates m
            // when the small-x transient has not reached the asymptotic slope.
            std::vector<double> coef = solve_linear_ls(A, b);  // (m, n)
            auto model_fn = [](const std::vector<double>& p, double x) {
                return std::exp(p[1]) * std::pow(x, p[0]);
            };
            auto jac_fn = [&](const std::vector<double>& p, double x, Eigen::MatrixXd::RowXpr J) {
                const double f = model_fn(p, x);
                J(0) = f * std::log(x);
                J(1) = f;
            };
            gauss_newton(coef, xs, std::span<const double>(ay), model_fn, jac_fn);
            FitResult f;
            f.model = model;
            f.coefficients = coef;
            double sse = 0.0;
            for (int i = 0; i < n; ++i) {
                const double r = model_fn(coef, xs[i]) - ay[i];
                sse += r * r;
            }
            f.residual = std::sqrt(sse / n);
            return f;
        }
        case FitModel::rat1: {
            need(3);
            double xmin = xs[0], xmax = xs[0];
            for (double x : xs) {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
            }
            const double span = std::max(xmax - xmin, 1e-12);
            // Pole candidates on both sides of the data, log-spaced distances.
            std::vector<double> candidates;
            for (int k = 0; k < 36; ++k) {
                const double d = span * std::pow(10.0, -2.0 + 3.5 * k / 35.0);
                candidates.push_back(xmin - d);
                candidates.push_back(xmax + d);
            }
            double best_sse = std::numeric_limits<double>::infinity();
            std::vector<double> best{0.0, 0.0, xmin - span};
            for (double c : candidates) {
                Eigen::MatrixXd A(n, 2);
                Eigen::VectorXd b(n);
                for (int i = 0; i < n; ++i) {
                    A(i, 0) = 1.0;
                    A(i, 1) = 1.0 / (xs[i] - c);
                    b(i) = ys[i];
                }
                Eigen::Vector2d ab = A.colPivHouseholderQr().solve(b);
                const double sse = (A * ab - b).squaredNorm();
                if (sse < best_sse) {
                    best_sse = sse;
                    best = {ab(0), ab(1), c};
                }
            }
            auto model_fn = [](const std::vector<double>& p, double x) {
                return p[0] + p[1] / (x - p[2]);
            };
            auto jac_fn = [](const std::vector<double>& p, double x, Eigen::MatrixXd::RowXpr J) {
                const double inv = 1.0 / (x - p[2]);
                J(0) = 1.0;
                J(1) = inv;
                J(2) = p[1] * inv * inv;
            };
            gauss_newton(best, xs, ys, model_fn, jac_fn);
            FitResult f;
            f.model = model;
            f.coefficients = best;
            double sse = 0.0;
            for (int i = 0; i < n; ++i) {
                const double r = model_fn(best, xs[i]) - ys[i];
                sse += r * r;
            }
            f.residual = std::sqrt(sse / n);
            return f;
        }
        case FitModel::power: {
            need(3);
            for (double x : xs)
                if (!(x > 0.0)) throw SingularFit("fit(power): x must be positive");
            double best_sse = std::numeric_limits<double>::infinity();
            std::vector<double> best{0.0, 0.0, 1.0};
            for (int k = 1; k <= 150; ++k) {
                const double p = 0.02 * k;
                Eigen::MatrixXd A(n, 2);
                Eigen::VectorXd b(n);
                for (int i = 0; i < n; ++i) {
                    A(i, 0) = 1.0;
                    A(i, 1) = std::pow(xs[i], -p);
                    b(i) = ys[i];
                }
                Eigen::Vector2d ab = A.colPivHouseholderQr().solve(b);
                const double sse = (A * ab - b).squaredNorm();
                if (sse < best_sse) {
                    best_sse = sse;
                    best = {ab(0), ab(1), p};
                }
            }
            auto model_fn = [](const std::vector<double>& p, double x) {
                return p[0] + p[1] * std::pow(x, -p[2]);
            };
            auto jac_fn = [](const std::vector<double>& p, double x, Eigen::MatrixXd::RowXpr J) {
                const double xp = std::pow(x, -p[2]);
                J(0) = 1.0;
                J(1) = xp;
                J(2) = -p[1] * std::log(x) * xp;
            };
            gauss_newton(best, xs, ys, model_fn, jac_fn);
            FitResult f;
            f.model = model;
            f.coefficients = best;
            double sse = 0.0;
            for (int i = 0; i < n; ++i) {
                const double r = model_fn(best, xs[i]) - ys[i];
                sse += r * r;
            }
            f.residual = std::sqrt(sse / n);
            return f;
        }
    }
    throw SingularFit("fit: unknown model");
}

double fit_eval(const FitResult& f, double x) {
    const auto& c = f.coefficients;
    switch (f.model) {
        case FitModel::lin: return c[0] + c[1] * x;
        case FitModel::poly2: return c[0] + c[1] * x + c[2] * x * x;
        case FitModel::rat1: return c[0] + c[1] / (x - c[2]);
        case FitModel::rat1f: return c[0] + c[1] / (x - 1.0);
        case FitModel::rat2f: return c[0] + c[1] / ((x - 1.0) * (x - 1.0));
        case FitModel::power: return c[0] + c[1] * std::pow(x, -c[2]);
        case FitModel::loglin: return std::exp(c[1]) * std::pow(x, c[0]);  // |y|
    }
    throw SingularFit("fit_eval: unknown model");
}

double curvature_crossing(std::span<const double> js, std::span<const double> heights) {
    if (js.size() != heights.size() || js.size() < 4)
        throw NoBracket("curvature_crossing: need at least 4 (j, height) samples");
    bool has_pos = false, has_neg = false;
    for (double h : heights) {
        has_pos = has_pos || h > 0.0;
        has_neg = has_neg || h < 0.0;
    }
    if (!has_pos || !has_neg)
        throw NoBracket("curvature_crossing: peak heights do not change sign over the j range");
    FitResult f = fit(FitModel::power, js, heights);
    const double a = f.coefficients[0], b = f.coefficients[1], p = f.coefficients[2];
    if (a == 0.0 || b == 0.0 || !(b / a < 0.0))
        throw NoBracket("curvature_crossing: fitted power law has no zero crossing");
    return std::pow(-b / a, 1.0 / p);
}

} // namespace qgeo::analysis
