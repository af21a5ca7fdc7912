#pragma once

#include "expball/diagnostics.hpp"
#include "expball/euler1d.hpp"
#include "expball/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace expball {

enum class SolverChoice { euler, potential, both };

/// Everything a run needs. Parsed from `key = value` lines; see parse_config().
struct ExperimentConfig
{
    double gamma = 1.2;
    double L = 0.1;
    double epsilon = 0.01;
    std::optional<double> delta; ///< defaults to 3 (gamma - 1) / 5
    std::size_t n_cells = 200;
    double cfl = 0.4;
    std::optional<double> t_end;
    double R_end = 10.0;
    Scheme scheme = Scheme::muscl_minmod;
    SolverChoice solver = SolverChoice::euler;
    ProfileKind profile = ProfileKind::linear;
    InitMode init = InitMode::potential_bump;
    BumpShape bump_shape = BumpShape::polynomial;
    double bump_center = 0.5;
    double bump_width = 0.25;
    double phi1_scale = 0.0;
    double record_dlogR = 0.02;
    std::size_t record_every = 0;
    double record_dense_until = 2.0; ///< covers the early window of the velocity check
    double fit_window = 0.5;
    double u_max = 100.0;
    Backend backend = Backend::openmp;
    std::string output_dir = "out";
    std::string output_prefix = "run";
    bool svg = false;
    std::uint64_t seed = 42;
    std::vector<std::string> checks{"mass", "sandwich", "vacuum", "energy_bound"};
    std::vector<std::size_t> grids{100, 200, 400};
    std::optional<double> min_order;
    std::optional<double> max_order;

    GasModel gas() const { return GasModel(gamma); }
    ExpansionProfile expansion() const { return {L, profile}; }
    InitialData initial_data() const;
    DecayConfig decay() const;
    double end_time() const;
    RunControl run_control() const;
};

/// Keys accepted by parse_config(), with a one-line description each.
const std::vector<std::pair<std::string, std::string>>& config_keys();

/// Parses `key = value` lines with `#` comments, fills defaults and validates
/// ranges. Throws ConfigError carrying the line number (parse errors, unknown or
/// repeated keys) or the key name (range violations).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Range checks shared by parse_config() and programmatic construction.
void validate(const ExperimentConfig& cfg);

} // namespace expball
