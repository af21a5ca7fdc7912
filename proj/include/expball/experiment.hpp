#pragma once

// Experiment orchestration behind the command-line tool: single runs, grid
// convergence studies and the rotation-field identity suite, with
// deterministic CSV / JSON / SVG output.

#include "expball/config.hpp"
#include "expball/diagnostics.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace expball {

/// Process exit codes.
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_solver_failed = 2, exit_config_error = 3 };

/// Column order of the diagnostics CSV.
const std::vector<std::string>& csv_columns();
std::string to_csv(const std::vector<DiagnosticRecord>& series);
/// Panels of the main diagnostic columns against log R.
std::string to_svg(const std::vector<DiagnosticRecord>& series, const std::string& title);

struct ExperimentResult
{
    int exit_code = exit_ok;
    std::vector<DiagnosticRecord> series;
    nlohmann::json summary;
    std::string error;
};

/// Runs the configured solver(s), evaluates cfg.checks plus `extra_checks`,
/// and fills the JSON summary. Solver failures map to exit 2, bad parameters to exit 3.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::vector<std::string>& extra_checks = {});

/// Output directory: $EXPBALL_OUTPUT_DIR if set, else cfg.output_dir.
std::string output_dir(const ExperimentConfig& cfg);

/// Writes <prefix>.csv, <prefix>.json and (if cfg.svg) <prefix>.svg; returns the paths written.
std::vector<std::string> write_artifacts(const ExperimentConfig& cfg, const ExperimentResult& res);

struct ConvergenceStudy
{
    int exit_code = exit_ok;
    nlohmann::json table;
    std::string error;
};

/// Runs cfg on each grid (in parallel; results gathered in grid order) and
/// reports L1 self-convergence orders of rho and u. Grids must be distinct and
/// form a geometric progression with an integer ratio >= 2.
ConvergenceStudy run_convergence(const ExperimentConfig& cfg, const std::vector<std::size_t>& grids);

/// Volume-weighted restriction of a fine cell field onto a grid `ratio` times coarser.
std::vector<double> restrict_cells(const std::vector<double>& fine, std::size_t ratio);

/// Volume-weighted L1 norm of a - b on a shared cell grid.
double l1_difference(const std::vector<double>& a, const std::vector<double>& b);

struct ZfieldOutcome
{
    int exit_code = exit_ok;
    std::string report;
};

ZfieldOutcome run_zfield_suite(std::uint64_t seed, int count);

} // namespace expball
