#include "qgeo/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "qgeo/analysis.hpp"
#include "qgeo/dicke.hpp"
#include "qgeo/geometry.hpp"
#include "qgeo/lmg_exact.hpp"
#include "qgeo/lmg_peaks.hpp"
#include "qgeo/lmg_thermo.hpp"
#include "qgeo/threading.hpp"
#include "qgeo/validation.hpp"

namespace qgeo::cli {

using nlohmann::json;

std::vector<double> GridSpec::values() const {
    std::vector<double> v;
    if (!(step > 0.0)) return v;
    for (double x = start; x <= end + 0.5 * step; x += step) v.push_back(x);
    return v;
}

namespace {

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string GridSpec::str() const {
    return num17(start) + ":" + num17(end) + ":" + num17(step);
}

GridSpec parse_grid(const std::string& spec) {
    GridSpec g;
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError("grid must be start:end:step, got '" + spec + "'");
    try {
        g.start = std::stod(spec.substr(0, c1));
        g.end = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        g.step = std::stod(spec.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ConfigError("grid must be numeric start:end:step, got '" + spec + "'");
    }
    if (!(g.step > 0.0)) throw ConfigError("grid step must be positive in '" + spec + "'");
    return g;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::dicke_metrics: return "dicke-metrics";
        case Command::lmg_thermo: return "lmg-thermo";
        case Command::lmg_exact: return "lmg-exact";
        case Command::lmg_mesh: return "lmg-mesh";
        case Command::peaks_fits: return "peaks-fits";
        case Command::validate: return "validate";
    }
    return "?";
}

namespace {

Command command_from_name(const std::string& s) {
    for (Command c : {Command::dicke_metrics, Command::lmg_thermo, Command::lmg_exact,
                      Command::lmg_mesh, Command::peaks_fits, Command::validate})
        if (s == command_name(c)) return c;
    throw ConfigError("unknown command: " + s);
}

} // namespace

std::string RunConfig::to_json() const {
    json o;
    o["command"] = command_name(command);
    o["omega0"] = omega0;
    o["omega"] = omega;
    if (lambda_grid) o["lambda_grid"] = lambda_grid->str();
    o["resonant"] = resonant;
    o["gamma"] = gamma;
    o["j"] = j;
    if (!j_set.empty()) o["j_set"] = j_set;
    if (h) o["h"] = *h;
    if (h_grid) o["h_grid"] = h_grid->str();
    if (gamma_grid) o["gamma_grid"] = gamma_grid->str();
    if (mesh) o["mesh"] = mesh->str();
    o["phase_space"] = phase_space;
    o["with_curvature"] = with_curvature;
    o["fd_step"] = fd_step;
    o["n_angles"] = n_angles;
    o["delta"] = delta;
    o["seed"] = seed;
    o["tol_gap_min"] = tol_gap_min;
    o["tol_gap_warn"] = tol_gap_warn;
    if (!only.empty()) o["only"] = only;
    o["out"] = out;
    o["format"] = format;
    return o.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
    json o;
    try {
        o = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad JSON config: ") + e.what());
    }
    RunConfig c;
    try {
        if (o.contains("command")) c.command = command_from_name(o["command"]);
        if (o.contains("omega0")) c.omega0 = o["omega0"];
        if (o.contains("omega")) c.omega = o["omega"];
        if (o.contains("lambda_grid")) c.lambda_grid = parse_grid(o["lambda_grid"]);
        if (o.contains("resonant")) c.resonant = o["resonant"];
        if (o.contains("gamma")) c.gamma = o["gamma"];
        if (o.contains("j")) c.j = o["j"];
        if (o.contains("j_set")) c.j_set = o["j_set"].get<std::vector<double>>();
        if (o.contains("h")) c.h = o["h"].get<double>();
        if (o.contains("h_grid")) c.h_grid = parse_grid(o["h_grid"]);
        if (o.contains("gamma_grid")) c.gamma_grid = parse_grid(o["gamma_grid"]);
        if (o.contains("mesh")) c.mesh = parse_grid(o["mesh"]);
        if (o.contains("phase_space")) c.phase_space = o["phase_space"];
        if (o.contains("with_curvature")) c.with_curvature = o["with_curvature"];
        if (o.contains("fd_step")) c.fd_step = o["fd_step"];
        if (o.contains("n_angles")) c.n_angles = o["n_angles"];
        if (o.contains("delta")) c.delta = o["delta"];
        if (o.contains("seed")) c.seed = o["seed"].get<std::uint64_t>();
        if (o.contains("tol_gap_min")) c.tol_gap_min = o["tol_gap_min"];
        if (o.contains("tol_gap_warn")) c.tol_gap_warn = o["tol_gap_warn"];
        if (o.contains("only")) c.only = o["only"];
        if (o.contains("out")) c.out = o["out"];
        if (o.contains("format")) c.format = o["format"];
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

namespace {

// A table cell is absent, a number, or a label (e.g. the phase column).
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::vector<Cell>& add_row() {
        rows.emplace_back(columns.size());
        return rows.back();
    }
};

std::string render_csv(const Table& t) {
    std::string s;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) s += ',';
        s += t.columns[c];
    }
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) s += ',';
            if (std::holds_alternative<double>(row[c]))
                s += num17(std::get<double>(row[c]));
            else if (std::holds_alternative<std::string>(row[c]))
                s += std::get<std::string>(row[c]);
        }
        s += '\n';
    }
    return s;
}

std::string render_json_table(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (const auto& cell : row) {
            if (std::holds_alternative<double>(cell))
                r.push_back(std::get<double>(cell));
            else if (std::holds_alternative<std::string>(cell))
                r.push_back(std::get<std::string>(cell));
            else
                r.push_back(nullptr);
        }
        rows.push_back(std::move(r));
    }
    json o;
    o["columns"] = t.columns;
    o["rows"] = std::move(rows);
    return o.dump(2) + "\n";
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + cfg.out);
    f << text;
}

void emit_table(const RunConfig& cfg, const Table& t) {
    if (cfg.format == "csv")
        write_output(cfg, render_csv(t));
    else if (cfg.format == "json")
        write_output(cfg, render_json_table(t));
    else
        throw ConfigError("unknown format: " + cfg.format + " (use csv or json)");
}

std::vector<double> require_grid(const std::optional<GridSpec>& g, const std::string& name) {
    if (!g) throw ConfigError("missing required grid: " + name);
    std::vector<double> v = g->values();
    if (v.empty()) throw ConfigError("empty grid: " + name + " = " + g->str());
    return v;
}

// ---- dicke-metrics ------------------------------------------------------

int cmd_dicke_metrics(const RunConfig& cfg) {
    const std::vector<double> lambdas = require_grid(cfg.lambda_grid, "--lambda-grid");
    if (!(cfg.omega > 0.0) || (!cfg.resonant && !(cfg.omega0 > 0.0)))
        throw ConfigError("omega and omega0 must be positive");

    Table t;
    t.columns = {"lambda", "g11_cl", "g12_cl", "g22_cl", "g11_q", "g12_q",
                 "g22_q",  "R_cl",   "R_q",    "phase"};
    t.rows.resize(lambdas.size(), std::vector<Cell>(t.columns.size()));

    const double lc = cfg.resonant ? 0.5 * cfg.omega
                                   : dicke::critical_coupling({cfg.omega0, cfg.omega, 0.0});

    parallel_for(lambdas.size(), [&](std::size_t i) {
        const double l = lambdas[i];
        auto& row = t.rows[i];
        row[0] = l;
        if (l == lc) {
            row[9] = std::string("critical");
            return;
        }
        const dicke::Phase phase = l < lc ? dicke::Phase::normal : dicke::Phase::superradiant;
        row[9] = std::string(phase == dicke::Phase::normal ? "normal" : "superradiant");

        MetricField f_cl, f_q;
        try {
            MetricTensor2D cl, q;
            if (cfg.resonant) {
                const auto r = dicke::resonant_metrics(cfg.omega, l, phase);
                cl = r.classical;
                q = r.quantum;
                f_cl = dicke::resonant_classical_field(phase);
                f_q = dicke::resonant_quantum_field(phase);
            } else {
                const dicke::DickeParams p{cfg.omega0, cfg.omega, l};
                cl = dicke::classical_metric(p, phase);
                q = dicke::quantum_metric(p, phase);
                f_cl = dicke::classical_metric_field(cfg.omega0, phase);
                f_q = dicke::quantum_metric_field(cfg.omega0, phase);
            }
            row[1] = cl.g11;
            row[2] = cl.g12;
            row[3] = cl.g22;
            row[4] = q.g11;
            row[5] = q.g12;
            row[6] = q.g22;
        } catch (const Error&) {
            return;  // metric columns stay absent
        }
        // Finite-difference curvature; step shrinks near the critical coupling.
        const double base = cfg.fd_step > 0.0 ? cfg.fd_step : 1e-4;
        const double step = std::max(1e-7, std::min(base, std::abs(l - lc) / 50.0));
        FdOptions fd;
        fd.refine = true;
        try {
            row[7] = scalar_curvature_fd(f_cl, {cfg.omega, l}, step, fd).R;
        } catch (const Error&) {
        }
        try {
            row[8] = scalar_curvature_fd(f_q, {cfg.omega, l}, step, fd).R;
        } catch (const Error&) {
        }
    }, 0);

    emit_table(cfg, t);
    return exit_ok;
}

// ---- lmg-thermo ---------------------------------------------------------

int cmd_lmg_thermo_phase_space(const RunConfig& cfg) {
    const std::vector<double> qs = require_grid(cfg.mesh, "--mesh");
    const double h = cfg.h.value_or(1.3);
    const lmg::LmgParams p{h, cfg.gamma, cfg.j};

    Table t;
    t.columns = {"Q", "P", "H_cl", "H_rot"};
    for (double Q : qs)
        for (double P : qs) {
            auto& row = t.add_row();
            row[0] = Q;
            row[1] = P;
            row[2] = lmg::classical_hamiltonian_qp(p, Q, P);
            if (h <= 1.0) row[3] = lmg::rotated_classical_hamiltonian_qp(p, Q, P);
        }
    emit_table(cfg, t);
    return exit_ok;
}

int cmd_lmg_thermo(const RunConfig& cfg) {
    if (cfg.phase_space) return cmd_lmg_thermo_phase_space(cfg);

    std::vector<double> hs;
    if (cfg.h_grid)
        hs = require_grid(cfg.h_grid, "--h-grid");
    else if (cfg.h)
        hs = {*cfg.h};
    else
        throw ConfigError("lmg-thermo needs --h or --h-grid");

    Table t;
    t.columns = {"h",     "phase",  "g11_cl", "g12_cl", "g22_cl", "g11_q", "g12_q",
                 "g22_q", "det_cl", "det_q",  "R",      "Eg"};
    t.rows.resize(hs.size(), std::vector<Cell>(t.columns.size()));

    parallel_for(hs.size(), [&](std::size_t i) {
        const double h = hs[i];
        auto& row = t.rows[i];
        row[0] = h;
        const lmg::LmgParams p{h, cfg.gamma, cfg.j};
        row[11] = lmg::ground_energy(p);
        if (h == 1.0) {
            row[1] = std::string("critical");
            return;
        }
        row[1] = std::string(h > 1.0 ? "symmetric" : "broken");
        try {
            const lmg::MetricPair m =
                h > 1.0 ? lmg::symmetric_metrics(p) : lmg::broken_metrics(p);
            row[2] = m.classical.g11;
            row[3] = m.classical.g12;
            row[4] = m.classical.g22;
            row[5] = m.quantum.g11;
            row[6] = m.quantum.g12;
            row[7] = m.quantum.g22;
            row[8] = m.classical.determinant();
            row[9] = m.quantum.determinant();
        } catch (const Error&) {
            return;
        }
        if (h < 1.0) row[10] = lmg::broken_curvature(p);
        // symmetric phase: the metric is degenerate and R stays undefined
    }, 0);

    emit_table(cfg, t);
    return exit_ok;
}

// ---- lmg-exact ----------------------------------------------------------

int cmd_lmg_exact(const RunConfig& cfg) {
    const std::vector<double> hs = require_grid(cfg.h_grid, "--h-grid");
    lmg::QmtOptions qopts;
    qopts.gap_min_rel = cfg.tol_gap_min;
    qopts.gap_warn_rel = cfg.tol_gap_warn;

    Table t;
    t.columns = {"h",          "g11",        "g12",        "g22",      "det",
                 "gap",        "near_degenerate",          "g11_thermo",
                 "g12_thermo", "g22_thermo", "R_thermo"};
    if (cfg.with_curvature) t.columns.push_back("R_exact");
    t.rows.resize(hs.size(), std::vector<Cell>(t.columns.size()));

    const MetricField field = lmg::exact_qmt_field(cfg.j, qopts);
    const double r_step = cfg.fd_step > 0.0
                              ? cfg.fd_step
                              : (cfg.j <= 100 ? 1e-3 : 5e-4);

    parallel_for(hs.size(), [&](std::size_t i) {
        const double h = hs[i];
        auto& row = t.rows[i];
        row[0] = h;
        try {
            const lmg::QmtResult r = lmg::exact_qmt(cfg.j, h, cfg.gamma, qopts);
            row[1] = r.g.g11;
            row[2] = r.g.g12;
            row[3] = r.g.g22;
            row[4] = r.g.determinant();
            row[5] = r.gap;
            row[6] = static_cast<double>(r.near_degenerate);
        } catch (const Error&) {
        }
        if (h != 1.0) {
            try {
                const lmg::LmgParams p{h, cfg.gamma, cfg.j};
                const lmg::MetricPair m =
                    h > 1.0 ? lmg::symmetric_metrics(p) : lmg::broken_metrics(p);
                row[7] = m.quantum.g11;
                row[8] = m.quantum.g12;
                row[9] = m.quantum.g22;
                if (h < 1.0) row[10] = lmg::broken_curvature(p);
            } catch (const Error&) {
            }
        }
        if (cfg.with_curvature) {
            FdOptions fd;
            fd.refine = true;
            try {
                row[11] = scalar_curvature_fd(field, {h, cfg.gamma}, r_step, fd).R;
            } catch (const Error&) {
            }
        }
    }, 0);

    emit_table(cfg, t);
    return exit_ok;
}

// ---- lmg-mesh -----------------------------------------------------------

int cmd_lmg_mesh(const RunConfig& cfg) {
    const std::vector<double> hs = require_grid(cfg.h_grid, "--h-grid");
    const std::vector<double> gs = require_grid(cfg.gamma_grid, "--gamma-grid");

    MetricGrid grid;
    grid.n1 = static_cast<int>(hs.size());
    grid.n2 = static_cast<int>(gs.size());
    grid.samples.resize(hs.size() * gs.size());
    std::vector<char> ok(grid.samples.size(), 0);
    parallel_for(grid.samples.size(), [&](std::size_t idx) {
        const std::size_t ih = idx / gs.size(), ig = idx % gs.size();
        try {
            grid.samples[idx] = lmg::exact_qmt(cfg.j, hs[ih], gs[ig]).g;
            ok[idx] = 1;
        } catch (const Error&) {
        }
    }, 0);

    CurvatureGrid rg;
    const bool all_ok = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
    if (all_ok)
        rg = curvature_from_mesh(grid, cfg.h_grid->step, cfg.gamma_grid->step);

    Table t;
    t.columns = {"h", "gamma", "g11", "g12", "g22", "det", "R"};
    for (std::size_t ih = 0; ih < hs.size(); ++ih)
        for (std::size_t ig = 0; ig < gs.size(); ++ig) {
            auto& row = t.add_row();
            row[0] = hs[ih];
            row[1] = gs[ig];
            const std::size_t idx = ih * gs.size() + ig;
            if (!ok[idx]) continue;
            const MetricTensor2D& g = grid.samples[idx];
            row[2] = g.g11;
            row[3] = g.g12;
            row[4] = g.g22;
            row[5] = g.determinant();
            if (all_ok) {
                const auto& cell = rg.at(static_cast<int>(ih), static_cast<int>(ig));
                if (cell) row[6] = cell->R;
            }
        }
    emit_table(cfg, t);
    return exit_ok;
}

// ---- peaks-fits ---------------------------------------------------------

json fit_to_json(const analysis::FitResult& f) {
    json o;
    o["model"] = analysis::fit_model_name(f.model);
    o["coefficients"] = f.coefficients;
    o["residual"] = f.residual;
    return o;
}

int cmd_peaks_fits(const RunConfig& cfg) {
    std::vector<double> js = cfg.j_set.empty() ? analysis::default_j_set() : cfg.j_set;
    if (js.size() < 3)
        throw SingularFit("peaks-fits: the log-linear fits need at least 3 j values, got " +
                          std::to_string(js.size()));

    analysis::PeakScanConfig scan;
    const analysis::PeaksFitsReport rep = analysis::run_peaks_fits(cfg.gamma, js, scan);

    json o;
    o["gamma"] = rep.gamma;
    o["j_set"] = rep.j_set;
    json fams = json::array();
    json table = json::array();
    for (const auto& f : rep.families) {
        json jf;
        jf["name"] = f.name;
        jf["j"] = f.js;
        jf["location"] = f.locations;
        jf["height"] = f.heights;
        if (f.loglin_j) jf["loglin_j"] = fit_to_json(*f.loglin_j);
        if (f.fit_h) jf["fit_h"] = fit_to_json(*f.fit_h);
        if (f.fit_j) jf["fit_j"] = fit_to_json(*f.fit_j);
        fams.push_back(std::move(jf));
        if (f.loglin_j) {
            json row;
            row["peak"] = f.name;
            row["m"] = f.loglin_j->coefficients[0];
            row["n"] = f.loglin_j->coefficients[1];
            table.push_back(std::move(row));
        }
    }
    o["families"] = std::move(fams);
    o["table"] = std::move(table);
    if (rep.slope) {
        json s;
        s["j"] = rep.slope->js;
        s["dR_dh_at_h1"] = rep.slope->slopes;
        s["fit"] = fit_to_json(rep.slope->fit);
        o["slope"] = std::move(s);
    }
    if (rep.crossing_j) o["r_max_zero_crossing_j"] = *rep.crossing_j;

    write_output(cfg, o.dump(2) + "\n");
    return exit_ok;
}

// ---- validate -----------------------------------------------------------

int cmd_validate(const RunConfig& cfg) {
    validation::CheckOptions opts;
    opts.seed = cfg.seed;
    opts.oracle_angles = cfg.n_angles;
    opts.fidelity_delta = cfg.delta;

    std::vector<validation::CheckResult> results;
    if (!cfg.only.empty())
        results.push_back(validation::run_named_check(cfg.only, opts));
    else
        results = validation::run_all_checks(opts);

    bool all = true;
    json checks = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        json c;
        c["name"] = r.name;
        c["passed"] = r.passed;
        c["detail"] = r.detail;
        checks.push_back(std::move(c));
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    }
    json o;
    o["checks"] = std::move(checks);
    o["all_passed"] = all;
    write_output(cfg, o.dump(2) + "\n");
    return all ? exit_ok : exit_validation_failure;
}

} // namespace

int run(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::dicke_metrics: return cmd_dicke_metrics(cfg);
        case Command::lmg_thermo: return cmd_lmg_thermo(cfg);
        case Command::lmg_exact: return cmd_lmg_exact(cfg);
        case Command::lmg_mesh: return cmd_lmg_mesh(cfg);
        case Command::peaks_fits: return cmd_peaks_fits(cfg);
        case Command::validate: return cmd_validate(cfg);
    }
    throw ConfigError("no command selected");
}

RunConfig parse_args(int argc, const char* const* argv) {
    // A --config file provides defaults; explicit flags override it.
    RunConfig cfg;
    bool have_command = false;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream f(argv[i + 1]);
            if (!f) throw ConfigError(std::string("cannot read config file: ") + argv[i + 1]);
            std::stringstream ss;
            ss << f.rdbuf();
            cfg = RunConfig::from_json(ss.str());
            have_command = true;
        }
    }

    CLI::App app{"parameter-space geometry of the Dicke and LMG models"};
    app.set_help_flag("--help", "print usage");  // keeps --h free for the field flag
    app.option_defaults()->ignore_case(false);
    std::string config_path, lambda_grid, h_grid, gamma_grid, mesh, j_set;
    app.add_option("--config", config_path, "JSON config file (flags override it)");
    app.add_option("--omega0", cfg.omega0, "two-level splitting (Dicke)");
    app.add_option("--omega", cfg.omega, "field frequency (Dicke)");
    app.add_option("--lambda-grid", lambda_grid, "coupling grid start:end:step");
    app.add_flag("--resonant", cfg.resonant, "resonance line omega0 = omega");
    app.add_option("--gamma", cfg.gamma, "LMG anisotropy");
    app.add_option("--j", cfg.j, "pseudospin j = N/2");
    app.add_option("--j-set", j_set, "comma-separated pseudospin list");
    app.add_option("--h", [&cfg](const CLI::results_t& r) {
        cfg.h = std::stod(r[0]);
        return true;
    }, "transverse field (single point)");
    app.add_option("--h-grid", h_grid, "field grid start:end:step");
    app.add_option("--gamma-grid", gamma_grid, "anisotropy grid start:end:step");
    app.add_option("--mesh", mesh, "phase-space (Q,P) grid start:end:step");
    app.add_flag("--phase-space", cfg.phase_space, "emit H(Q,P) contours instead of metrics");
    app.add_flag("--with-curvature", cfg.with_curvature, "add finite-difference R to lmg-exact");
    app.add_option("--fd-step", cfg.fd_step, "finite-difference step (0 = auto)");
    app.add_option("--n-angles", cfg.n_angles, "torus quadrature points per angle");
    app.add_option("--delta", cfg.delta, "fidelity-oracle displacement");
    app.add_option("--seed", cfg.seed, "seed for the sampled checks");
    app.add_option("--tol-gap-min", cfg.tol_gap_min, "degenerate-ground-state threshold");
    app.add_option("--tol-gap-warn", cfg.tol_gap_warn, "near-degeneracy warning threshold");
    app.add_option("--only", cfg.only, "run a single validation check");
    app.add_option("--out", cfg.out, "output path (- = stdout)");
    app.add_option("--format", cfg.format, "csv or json");

    for (Command c : {Command::dicke_metrics, Command::lmg_thermo, Command::lmg_exact,
                      Command::lmg_mesh, Command::peaks_fits, Command::validate}) {
        CLI::App* sub = app.add_subcommand(command_name(c), "");
        sub->fallthrough();
        sub->parse_complete_callback([&cfg, &have_command, c] {
            cfg.command = c;
            have_command = true;
        });
    }

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        throw HelpRequested("help");
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    if (!lambda_grid.empty()) cfg.lambda_grid = parse_grid(lambda_grid);
    if (!h_grid.empty()) cfg.h_grid = parse_grid(h_grid);
    if (!gamma_grid.empty()) cfg.gamma_grid = parse_grid(gamma_grid);
    if (!mesh.empty()) cfg.mesh = parse_grid(mesh);
    if (!j_set.empty()) {
        cfg.j_set.clear();
        std::stringstream ss(j_set);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) {
                try {
                    cfg.j_set.push_back(std::stod(item));
                } catch (const std::exception&) {
                    throw ConfigError("--j-set needs numbers, got '" + item + "'");
                }
            }
    }
    if (!have_command) throw ConfigError("no command given (try --help)");
    return cfg;
}

int main_entry(int argc, const char* const* argv) {
    RunConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const HelpRequested&) {
        return exit_ok;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    try {
        return run(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical_failure;
    }
}

} // namespace qgeo::cli
