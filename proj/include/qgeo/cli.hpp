#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgeo/errors.hpp"

namespace qgeo::cli {

// Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation_failure = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_failure = 3;

/// Inclusive start:end:step grid; the end point is kept when it lands within
/// half a step.
struct GridSpec {
    double start = 0.0;
    double end = 0.0;
    double step = 0.0;

    std::vector<double> values() const;
    std::string str() const;

    bool operator==(const GridSpec&) const = default;
};

GridSpec parse_grid(const std::string& spec);

enum class Command {
    dicke_metrics,
    lmg_thermo,
    lmg_exact,
    lmg_mesh,
    peaks_fits,
    validate,
};

const char* command_name(Command c);

/// Everything a run depends on. Round-trips through JSON; equal configs
/// produce bit-identical output files.
struct RunConfig {
    Command command = Command::validate;

    // Dicke
    double omega0 = 1.0;
    double omega = 0.8;
    std::optional<GridSpec> lambda_grid;
    bool resonant = false;

    // LMG
    double gamma = -0.5;
    double j = 100.0;
    std::vector<double> j_set;
    std::optional<double> h;
    std::optional<GridSpec> h_grid;
    std::optional<GridSpec> gamma_grid;
    std::optional<GridSpec> mesh;  // (Q, P) grid of the phase-space output
    bool phase_space = false;
    bool with_curvature = false;

    // numerics
    double fd_step = 0.0;  // 0 = per-command default
    int n_angles = 256;
    double delta = 1e-3;
    std::uint64_t seed = 20210901;
    double tol_gap_min = 1e-12;
    double tol_gap_warn = 1e-8;

    // validate
    std::string only;

    // output
    std::string out = "-";  // "-" = stdout
    std::string format = "csv";

    std::string to_json() const;
    static RunConfig from_json(const std::string& text);

    bool operator==(const RunConfig&) const = default;
};

/// argv -> config; handles --config <file.json> preloading (explicit flags
/// override file values). Throws ConfigError on bad input.
RunConfig parse_args(int argc, const char* const* argv);

/// Executes one command; returns the process exit code.
int run(const RunConfig& cfg);

/// parse + run + error-to-exit-code mapping; the CLI main is a thin wrapper.
int main_entry(int argc, const char* const* argv);

} // namespace qgeo::cli
