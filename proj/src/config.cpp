#include "expball/config.hpp"

#include "expball/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace expball {

InitialData ExperimentConfig::initial_data() const
{
    InitialData d;
    d.mode = init;
    d.epsilon = epsilon;
    d.shape = bump_shape;
    d.bump_center = bump_center;
    d.bump_width = bump_width;
    d.phi1_scale = phi1_scale;
    return d;
}

DecayConfig ExperimentConfig::decay() const
{
    DecayConfig c = DecayConfig::for_gas(gas());
    if (delta)
        c.delta = *delta;
    c.fit_window = fit_window;
    return c;
}

double ExperimentConfig::end_time() const
{
    if (t_end)
        return *t_end;
    return expansion().time_at_radius(R_end);
}

RunControl ExperimentConfig::run_control() const
{
    RunControl c;
    c.t_end = end_time();
    c.cfl = cfl;
    c.solver.scheme = scheme;
    c.solver.backend = backend;
    c.solver.u_max = u_max;
    c.cadence.dlogR = record_dlogR;
    c.cadence.every_steps = record_every;
    c.cadence.dense_until = record_dense_until;
    return c;
}

const std::vector<std::pair<std::string, std::string>>& config_keys()
{
    static const std::vector<std::pair<std::string, std::string>> keys{
        {"gamma", "adiabatic exponent, 1 < gamma < 5/3 (default 1.2)"},
        {"L", "wall speed, > 0 (default 0.1)"},
        {"epsilon", "perturbation amplitude, >= 0 (default 0.01)"},
        {"delta", "energy weight exponent, 0 < delta <= 3(gamma-1)/5 (default: the upper limit)"},
        {"n_cells", "grid cells, >= 8 (default 200)"},
        {"cfl", "Courant number, 0 < cfl <= 1 (default 0.4)"},
        {"t_end", "final time; overrides R_end"},
        {"R_end", "final wall radius, > 1 (default 10)"},
        {"scheme", "muscl_minmod | first_order"},
        {"solver", "euler | potential | both"},
        {"profile", "linear | ramped"},
        {"init", "potential_bump | background"},
        {"bump_shape", "polynomial | compact (default polynomial)"},
        {"bump_center", "compact bump centre in (0, 1) (default 0.5)"},
        {"bump_width", "compact bump half-width (default 0.25)"},
        {"phi1_scale", "initial dtPhi perturbation as a multiple of the bump (default 0)"},
        {"record_dlogR", "record spacing in log R, 0 disables (default 0.02)"},
        {"record_every", "record every k steps, 0 disables (default 0)"},
        {"record_dense_until", "record every step while t <= this time (default 2)"},
        {"fit_window", "decay-fit window as a fraction of the log R span (default 0.5)"},
        {"u_max", "velocity sanity bound (default 100)"},
        {"backend", "openmp | serial"},
        {"output_dir", "output directory (default out); EXPBALL_OUTPUT_DIR overrides"},
        {"output_prefix", "output file prefix (default run)"},
        {"svg", "write SVG charts: true | false"},
        {"seed", "random seed for the identity suite (default 42)"},
        {"checks", "comma list of mass, sandwich, vacuum, energy_bound, energy_converged, velocity, decay, cross"},
        {"grids", "comma list of grid sizes for converge (default 100,200,400)"},
        {"min_order", "converge: minimum observed order (default 1.8 muscl, 0.8 first order)"},
        {"max_order", "converge: maximum observed order (default none muscl, 1.2 first order)"},
    };
    return keys;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key, int line)
{
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, out);
    if (r.ec != std::errc() || r.ptr != end)
        throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" + v + "'", line, key);
    return out;
}

std::size_t to_size(const std::string& v, const std::string& key, int line)
{
    std::size_t out = 0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, out);
    if (r.ec != std::errc() || r.ptr != end)
        throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a nonnegative integer, got '" + v + "'", line, key);
    return out;
}

std::vector<std::string> split_list(const std::string& v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty())
            out.push_back(t);
    return out;
}

[[noreturn]] void bad_choice(const std::string& key, const std::string& v, int line)
{
    throw ConfigError("line " + std::to_string(line) + ": invalid value '" + v + "' for '" + key + "'", line, key);
}

void range(bool ok, const std::string& key, const std::string& what)
{
    if (!ok)
        throw ConfigError("config value out of range: " + key + " " + what, 0, key);
}

} // namespace

void validate(const ExperimentConfig& c)
{
    range(c.gamma > 1.0 && c.gamma < 5.0 / 3.0, "gamma", "must lie in (1, 5/3)");
    range(c.L > 0.0, "L", "must be positive");
    range(c.epsilon >= 0.0, "epsilon", "must be nonnegative");
    if (c.delta)
        range(*c.delta > 0.0 && *c.delta <= 0.6 * (c.gamma - 1.0) * (1.0 + 1e-12), "delta",
              "must lie in (0, 3(gamma-1)/5]");
    range(c.n_cells >= 8, "n_cells", "must be at least 8");
    range(c.cfl > 0.0 && c.cfl <= 1.0, "cfl", "must lie in (0, 1]");
    if (c.t_end)
        range(*c.t_end > 0.0, "t_end", "must be positive");
    range(c.R_end > 1.0, "R_end", "must exceed 1");
    if (c.bump_shape == BumpShape::compact)
        range(c.bump_width > 0.0 && c.bump_center - c.bump_width > 0.0 && c.bump_center + c.bump_width < 1.0,
              "bump_center", "and bump_width must keep the bump inside (0, 1)");
    range(c.record_dlogR >= 0.0, "record_dlogR", "must be nonnegative");
    range(c.record_dense_until >= 0.0, "record_dense_until", "must be nonnegative");
    range(c.fit_window > 0.0 && c.fit_window <= 1.0, "fit_window", "must lie in (0, 1]");
    range(c.u_max > 0.0, "u_max", "must be positive");
    static const std::set<std::string> known{"mass", "sandwich", "vacuum", "energy_bound", "energy_converged",
                                             "velocity", "decay", "cross"};
    for (const auto& k : c.checks)
        range(known.count(k) > 0, "checks", "has unknown entry '" + k + "'");
    if (std::find(c.checks.begin(), c.checks.end(), "cross") != c.checks.end())
        range(c.solver == SolverChoice::both, "checks", "entry 'cross' needs solver = both");
}

ExperimentConfig parse_config(const std::string& text)
{
    ExperimentConfig c;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty())
            continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string v = trim(s.substr(eq + 1));
        if (key.empty() || v.empty())
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'", line, key);
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(line) + ": repeated key '" + key + "'", line, key);

        if (key == "gamma") c.gamma = to_double(v, key, line);
        else if (key == "L") c.L = to_double(v, key, line);
        else if (key == "epsilon") c.epsilon = to_double(v, key, line);
        else if (key == "delta") c.delta = to_double(v, key, line);
        else if (key == "n_cells") c.n_cells = to_size(v, key, line);
        else if (key == "cfl") c.cfl = to_double(v, key, line);
        else if (key == "t_end") c.t_end = to_double(v, key, line);
        else if (key == "R_end") c.R_end = to_double(v, key, line);
        else if (key == "scheme") {
            if (v == "muscl_minmod") c.scheme = Scheme::muscl_minmod;
            else if (v == "first_order") c.scheme = Scheme::first_order;
            else bad_choice(key, v, line);
        } else if (key == "solver") {
            if (v == "euler") c.solver = SolverChoice::euler;
            else if (v == "potential") c.solver = SolverChoice::potential;
            else if (v == "both") c.solver = SolverChoice::both;
            else bad_choice(key, v, line);
        } else if (key == "profile") {
            if (v == "linear") c.profile = ProfileKind::linear;
            else if (v == "ramped") c.profile = ProfileKind::ramped;
            else bad_choice(key, v, line);
        } else if (key == "init") {
            if (v == "potential_bump") c.init = InitMode::potential_bump;
            else if (v == "background") c.init = InitMode::background;
            else bad_choice(key, v, line);
        } else if (key == "bump_shape") {
            if (v == "polynomial") c.bump_shape = BumpShape::polynomial;
            else if (v == "compact") c.bump_shape = BumpShape::compact;
            else bad_choice(key, v, line);
        } else if (key == "bump_center") c.bump_center = to_double(v, key, line);
        else if (key == "bump_width") c.bump_width = to_double(v, key, line);
        else if (key == "phi1_scale") c.phi1_scale = to_double(v, key, line);
        else if (key == "record_dlogR") c.record_dlogR = to_double(v, key, line);
        else if (key == "record_dense_until") c.record_dense_until = to_double(v, key, line);
        else if (key == "record_every") c.record_every = to_size(v, key, line);
        else if (key == "fit_window") c.fit_window = to_double(v, key, line);
        else if (key == "u_max") c.u_max = to_double(v, key, line);
        else if (key == "backend") {
            if (v == "openmp") c.backend = Backend::openmp;
            else if (v == "serial") c.backend = Backend::serial;
            else bad_choice(key, v, line);
        } else if (key == "output_dir") c.output_dir = v;
        else if (key == "output_prefix") c.output_prefix = v;
        else if (key == "svg") {
            if (v == "true") c.svg = true;
            else if (v == "false") c.svg = false;
            else bad_choice(key, v, line);
        } else if (key == "seed") c.seed = to_size(v, key, line);
        else if (key == "checks") c.checks = split_list(v);
        else if (key == "grids") {
            c.grids.clear();
            for (const auto& g : split_list(v))
                c.grids.push_back(to_size(g, key, line));
        } else if (key == "min_order") c.min_order = to_double(v, key, line);
        else if (key == "max_order") c.max_order = to_double(v, key, line);
        else
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'", line, key);
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

} // namespace expball
