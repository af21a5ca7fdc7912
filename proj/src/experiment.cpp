#include "expball/experiment.hpp"

#include "expball/errors.hpp"
#include "expball/potential1d.hpp"
#include "expball/zfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace expball {

using nlohmann::json;

const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> cols{
        "t", "R", "mass", "rho_ratio_min", "rho_ratio_max", "dev_u_sup", "dev_grad_sup",
        "dtphi_sup", "energy_E", "cum_spacetime", "c2_floor_ratio"};
    return cols;
}

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string to_csv(const std::vector<DiagnosticRecord>& series)
{
    std::string out;
    const auto& cols = csv_columns();
    for (std::size_t k = 0; k < cols.size(); ++k)
        out += (k ? "," : "") + cols[k];
    out += '\n';
    for (const auto& r : series) {
        const double vals[] = {r.t, r.R, r.mass, r.rho_ratio_min, r.rho_ratio_max, r.dev_u_sup,
                               r.dev_grad_sup, r.dtphi_sup, r.energy_E, r.cum_spacetime, r.c2_floor_ratio};
        for (std::size_t k = 0; k < std::size(vals); ++k)
            out += (k ? "," : "") + num(vals[k]);
        out += '\n';
    }
    return out;
}

std::string to_svg(const std::vector<DiagnosticRecord>& series, const std::string& title)
{
    struct Panel
    {
        const char* name;
        double (*get)(const DiagnosticRecord&);
        bool log_scale;
    };
    static const Panel panels[] = {
        {"dev_u_sup", [](const DiagnosticRecord& r) { return r.dev_u_sup; }, true},
        {"dev_grad_sup", [](const DiagnosticRecord& r) { return r.dev_grad_sup; }, true},
        {"dtphi_sup", [](const DiagnosticRecord& r) { return r.dtphi_sup; }, true},
        {"energy_E", [](const DiagnosticRecord& r) { return r.energy_E; }, true},
        {"rho_ratio_max", [](const DiagnosticRecord& r) { return r.rho_ratio_max; }, false},
        {"c2_floor_ratio", [](const DiagnosticRecord& r) { return r.c2_floor_ratio; }, false},
    };
    constexpr int pw = 320, ph = 220, cols = 3, margin = 45;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * pw << "\" height=\"" << 2 * ph + 30
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"10\" y=\"18\" font-size=\"14\">" << title << "</text>\n";

    for (std::size_t k = 0; k < std::size(panels); ++k) {
        const Panel& p = panels[k];
        const int ox = static_cast<int>(k % cols) * pw;
        const int oy = 30 + static_cast<int>(k / cols) * ph;
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : series) {
            double y = p.get(r);
            if (p.log_scale) {
                if (!(y > 0.0))
                    continue;
                y = std::log10(y);
            }
            pts.emplace_back(std::log(r.R), y);
        }
        os << "<g transform=\"translate(" << ox << "," << oy << ")\">\n";
        os << "<rect x=\"" << margin << "\" y=\"10\" width=\"" << pw - margin - 10 << "\" height=\"" << ph - 50
           << "\" fill=\"none\" stroke=\"#888\"/>\n";
        os << "<text x=\"" << margin << "\" y=\"" << ph - 12 << "\">" << (p.log_scale ? "log10 " : "") << p.name
           << " vs log R</text>\n";
        if (pts.size() >= 2) {
            double x0 = pts.front().first, x1 = pts.front().first;
            double y0 = pts.front().second, y1 = pts.front().second;
            for (const auto& [x, y] : pts) {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
            if (x1 == x0)
                x1 = x0 + 1.0;
            if (y1 == y0) {
                y0 -= 0.5;
                y1 += 0.5;
            }
            const double w = pw - margin - 10, h = ph - 50;
            os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : pts)
                os << short_num(margin + (x - x0) / (x1 - x0) * w) << "," << short_num(10 + (1.0 - (y - y0) / (y1 - y0)) * h)
                   << " ";
            os << "\"/>\n";
            os << "<text x=\"2\" y=\"20\">" << short_num(y1) << "</text>\n";
            os << "<text x=\"2\" y=\"" << ph - 40 << "\">" << short_num(y0) << "</text>\n";
            os << "<text x=\"" << margin << "\" y=\"" << ph - 28 << "\">" << short_num(x0) << "</text>\n";
            os << "<text x=\"" << pw - 40 << "\" y=\"" << ph - 28 << "\">" << short_num(x1) << "</text>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string output_dir(const ExperimentConfig& cfg)
{
    if (const char* env = std::getenv("EXPBALL_OUTPUT_DIR"); env && *env)
        return env;
    return cfg.output_dir;
}

namespace {

const char* scheme_name(Scheme s)
{
    return s == Scheme::muscl_minmod ? "muscl_minmod" : "first_order";
}

const char* solver_name(SolverChoice s)
{
    switch (s) {
    case SolverChoice::euler: return "euler";
    case SolverChoice::potential: return "potential";
    case SolverChoice::both: return "both";
    }
    return "";
}

json config_json(const ExperimentConfig& c)
{
    json j;
    j["gamma"] = c.gamma;
    j["L"] = c.L;
    j["epsilon"] = c.epsilon;
    j["delta"] = c.decay().delta;
    j["mu"] = c.decay().mu;
    j["n_cells"] = c.n_cells;
    j["cfl"] = c.cfl;
    j["t_end"] = c.end_time();
    j["R_end"] = c.expansion().radius(c.end_time());
    j["scheme"] = scheme_name(c.scheme);
    j["solver"] = solver_name(c.solver);
    j["profile"] = c.profile == ProfileKind::linear ? "linear" : "ramped";
    j["init"] = c.init == InitMode::background ? "background" : "potential_bump";
    j["bump_shape"] = c.bump_shape == BumpShape::polynomial ? "polynomial" : "compact";
    j["bump_center"] = c.bump_center;
    j["bump_width"] = c.bump_width;
    j["phi1_scale"] = c.phi1_scale;
    return j;
}

struct SolverRun
{
    std::vector<DiagnosticRecord> series;
    FlowState final;
    std::size_t steps = 0;
};

SolverRun run_euler(const ExperimentConfig& cfg, const RunControl& ctl)
{
    const GasModel g = cfg.gas();
    const ExpansionProfile p = cfg.expansion();
    Recorder rec(g, p, cfg.decay());
    const RunResult r = run(g, p, Grid(cfg.n_cells), cfg.initial_data(), ctl,
                            [&](std::size_t k, const FlowState& s) { rec.on_observe(k, s); },
                            [&](double dt, const FlowState& s) { rec.on_step(dt, s); });
    return {rec.series(), r.final, r.steps};
}

SolverRun run_potential_solver(const ExperimentConfig& cfg, const RunControl& ctl)
{
    const GasModel g = cfg.gas();
    const ExpansionProfile p = cfg.expansion();
    Recorder rec(g, p, cfg.decay());
    PotentialRunControl pc;
    pc.t_end = ctl.t_end;
    pc.cfl = ctl.cfl;
    pc.backend = ctl.solver.backend;
    pc.cadence = ctl.cadence;
    const PotentialRunResult r = run_potential(
        g, p, Grid(cfg.n_cells), cfg.initial_data(), pc,
        [&](std::size_t k, const PotentialState& s) { rec.on_observe(k, to_cell_flow(s, g, p)); },
        [&](double dt, const PotentialState& s) { rec.on_step(dt, to_cell_flow(s, g, p)); });
    return {rec.series(), to_cell_flow(r.final, g, p), r.steps};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

json fit_json(const std::vector<DiagnosticRecord>& series, Field f, const DecayConfig& dc)
{
    try {
        const DecayFit fit = decay_fit(series, f, dc);
        return {{"exponent", fit.exponent}, {"stderr", fit.stderr_}, {"points", fit.points}};
    } catch (const DomainError& e) {
        return {{"error", e.what()}};
    }
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::vector<std::string>& extra_checks)
{
    ExperimentResult res;
    std::vector<std::string> checks = cfg.checks;
    for (const auto& c : extra_checks)
        if (std::find(checks.begin(), checks.end(), c) == checks.end())
            checks.push_back(c);

    try {
        validate(cfg);
        const GasModel g = cfg.gas();
        const DecayConfig dc = cfg.decay();
        dc.validate(g);
        const RunControl ctl = cfg.run_control();

        SolverRun primary;
        std::optional<SolverRun> secondary;
        if (cfg.solver == SolverChoice::potential) {
            primary = run_potential_solver(cfg, ctl);
        } else {
            primary = run_euler(cfg, ctl);
            if (cfg.solver == SolverChoice::both)
                secondary = run_potential_solver(cfg, ctl);
        }
        res.series = primary.series;
        const auto& series = res.series;

        json summary;
        summary["config"] = config_json(cfg);
        summary["records"] = series.size();
        summary["steps"] = primary.steps;
        {
            const FlowState& f = primary.final;
            json fin;
            fin["t"] = f.t;
            fin["R"] = cfg.expansion().radius(f.t);
            fin["max_rho"] = *std::max_element(f.rho.begin(), f.rho.end());
            fin["min_rho"] = *std::min_element(f.rho.begin(), f.rho.end());
            fin["mass"] = series.back().mass;
            summary["final"] = fin;
        }
        json fits;
        for (Field f : {Field::dev_u_sup, Field::dev_grad_sup, Field::dtphi_sup, Field::energy_E})
            fits[field_name(f)] = fit_json(series, f, dc);
        summary["fits"] = fits;

        if (secondary) {
            json cv;
            cv["t"] = primary.final.t;
            cv["max_abs_du"] = max_abs_diff(primary.final.u, secondary->final.u);
            cv["max_abs_drho"] = max_abs_diff(primary.final.rho, secondary->final.rho);
            cv["potential_steps"] = secondary->steps;
            summary["cross_validation"] = cv;
        }

        json verdicts = json::object();
        bool all_pass = true;
        const double k3 = 3.0 * (g.gamma() - 1.0);
        for (const auto& name : checks) {
            json v;
            try {
                if (name == "mass") {
                    if (cfg.solver == SolverChoice::potential) {
                        v["pass"] = true;
                        v["note"] = "not applicable to the potential solver";
                    } else {
                        double drift = 0.0;
                        for (const auto& r : series)
                            drift = std::max(drift, std::abs(r.mass - series.front().mass) / series.front().mass);
                        v["max_relative_drift"] = drift;
                        v["tolerance"] = 1e-10;
                        v["pass"] = drift <= 1e-10;
                    }
                } else if (name == "sandwich") {
                    const auto s = density_sandwich(series);
                    v = {{"pass", s.pass}, {"lower_margin", s.lower_margin}, {"upper_margin", s.upper_margin}};
                } else if (name == "vacuum") {
                    const auto s = vacuum_floor(series, g);
                    v = {{"pass", s.pass}, {"min_ratio", s.min_ratio}, {"max_ratio", s.max_ratio}};
                } else if (name == "energy_bound" || name == "energy_converged") {
                    const auto s = energy_check(series);
                    const bool ok = name == "energy_bound" ? s.bounded : s.converged;
                    v = {{"pass", ok},
                         {"max_ratio_to_initial", s.max_ratio},
                         {"final_increment_per_logR_fraction", s.final_slope_fraction}};
                } else if (name == "velocity") {
                    const auto s = velocity_convergence(series);
                    v = {{"pass", s.pass}, {"final", s.final_value}, {"early_max", s.early_max}, {"factor", 0.1}};
                } else if (name == "decay") {
                    const DecayFit fu = decay_fit(series, Field::dev_u_sup, dc);
                    const DecayFit fd = decay_fit(series, Field::dtphi_sup, dc);
                    const double lim_u = -k3 + dc.delta / 2.0 + 0.2;
                    const double lim_d = -k3 + 0.2;
                    v = {{"pass", fu.exponent <= lim_u && fd.exponent <= lim_d},
                         {"dev_u_sup_exponent", fu.exponent},
                         {"dev_u_sup_limit", lim_u},
                         {"dtphi_sup_exponent", fd.exponent},
                         {"dtphi_sup_limit", lim_d}};
                } else if (name == "cross") {
                    const double du = summary["cross_validation"]["max_abs_du"].get<double>();
                    v = {{"pass", du <= 5e-3}, {"max_abs_du", du}, {"tolerance", 5e-3}};
                }
            } catch (const DomainError& e) {
                v = {{"pass", false}, {"error", e.what()}};
            }
            all_pass = all_pass && v.value("pass", false);
            verdicts[name] = v;
        }
        summary["checks"] = verdicts;
        summary["pass"] = all_pass;
        res.summary = summary;
        res.exit_code = all_pass ? exit_ok : exit_check_failed;
    } catch (const ConfigError& e) {
        res.exit_code = exit_config_error;
        res.error = e.what();
    } catch (const SolverDiverged& e) {
        res.exit_code = exit_solver_failed;
        res.error = std::string(e.what()) + " (t = " + num(e.time()) + ", cell " + std::to_string(e.cell()) + ")";
    } catch (const VacuumReached& e) {
        res.exit_code = exit_solver_failed;
        res.error = std::string(e.what()) + " (t = " + num(e.time()) + ", r = " + num(e.radius()) + ")";
    } catch (const DomainError& e) {
        res.exit_code = exit_config_error;
        res.error = e.what();
    } catch (const UnsupportedExponent& e) {
        res.exit_code = exit_config_error;
        res.error = e.what();
    }
    if (res.exit_code == exit_solver_failed || res.exit_code == exit_config_error)
        res.summary = {{"error", res.error}, {"pass", false}};
    return res;
}

std::vector<std::string> write_artifacts(const ExperimentConfig& cfg, const ExperimentResult& res)
{
    namespace fs = std::filesystem;
    const fs::path dir = output_dir(cfg);
    fs::create_directories(dir);
    std::vector<std::string> paths;
    auto put = [&](const std::string& name, const std::string& text) {
        const fs::path path = dir / name;
        std::ofstream f(path, std::ios::binary);
        f << text;
        if (!f)
            throw Error("cannot write " + path.string());
        paths.push_back(path.string());
    };
    if (!res.series.empty())
        put(cfg.output_prefix + ".csv", to_csv(res.series));
    put(cfg.output_prefix + ".json", res.summary.dump(2) + "\n");
    if (cfg.svg && !res.series.empty())
        put(cfg.output_prefix + ".svg", to_svg(res.series, cfg.output_prefix));
    return paths;
}

std::vector<double> restrict_cells(const std::vector<double>& fine, std::size_t ratio)
{
    if (ratio < 1 || fine.size() % ratio != 0)
        throw DomainError("restriction ratio must divide the fine grid size");
    const Grid fg(fine.size());
    const std::size_t nc = fine.size() / ratio;
    std::vector<double> out(nc);
    for (std::size_t i = 0; i < nc; ++i) {
        double sum = 0.0, vol = 0.0;
        for (std::size_t k = i * ratio; k < (i + 1) * ratio; ++k) {
            sum += fine[k] * fg.volume(k);
            vol += fg.volume(k);
        }
        out[i] = sum / vol;
    }
    return out;
}

double l1_difference(const std::vector<double>& a, const std::vector<double>& b)
{
    const Grid grid(a.size());
    double sum = 0.0, vol = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::abs(a[i] - b[i]) * grid.volume(i);
        vol += grid.volume(i);
    }
    return sum / vol;
}

ConvergenceStudy run_convergence(const ExperimentConfig& cfg, const std::vector<std::size_t>& grids)
{
    ConvergenceStudy out;
    try {
        validate(cfg);
        if (grids.size() < 3)
            throw ConfigError("convergence study needs at least 3 grids", 0, "grids");
        for (std::size_t k = 0; k + 1 < grids.size(); ++k) {
            if (grids[k] < 8)
                throw ConfigError("grid sizes must be at least 8", 0, "grids");
            if (grids[k + 1] == grids[k])
                throw ConfigError("duplicate grid size " + std::to_string(grids[k]), 0, "grids");
            if (grids[k + 1] % grids[k] != 0 || grids[k + 1] / grids[k] != grids[1] / grids[0] || grids[1] / grids[0] < 2)
                throw ConfigError("grids must form a geometric progression with integer ratio >= 2", 0, "grids");
        }
        const std::size_t ratio = grids[1] / grids[0];

        std::vector<FlowState> finals(grids.size());
        std::vector<int> failed(grids.size(), 0);
        std::vector<std::string> errors(grids.size());
        const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(grids.size());
        // independent runs fan out; each run is single-threaded inside
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < m; ++k) {
            ExperimentConfig c = cfg;
            c.n_cells = grids[static_cast<std::size_t>(k)];
            c.backend = Backend::serial;
            try {
                const RunControl ctl = c.run_control();
                finals[static_cast<std::size_t>(k)] =
                    c.solver == SolverChoice::potential ? run_potential_solver(c, ctl).final : run_euler(c, ctl).final;
            } catch (const Error& e) {
                failed[static_cast<std::size_t>(k)] = 1;
                errors[static_cast<std::size_t>(k)] = e.what();
            }
        }
        for (std::size_t k = 0; k < grids.size(); ++k)
            if (failed[k])
                throw SolverDiverged("grid " + std::to_string(grids[k]) + ": " + errors[k], 0.0, 0);

        const double min_order = cfg.min_order.value_or(cfg.scheme == Scheme::muscl_minmod ? 1.8 : 0.8);
        const bool has_max = cfg.max_order.has_value() || cfg.scheme == Scheme::first_order;
        const double max_order = cfg.max_order.value_or(1.2);

        json table;
        table["config"] = config_json(cfg);
        table["grids"] = grids;
        table["min_order"] = min_order;
        if (has_max)
            table["max_order"] = max_order;
        else
            table["max_order"] = nullptr;
        bool pass = true;
        for (const char* field : {"rho", "u"}) {
            std::vector<double> errs;
            for (std::size_t k = 0; k + 1 < grids.size(); ++k) {
                const auto& coarse = std::string(field) == "rho" ? finals[k].rho : finals[k].u;
                const auto& fine = std::string(field) == "rho" ? finals[k + 1].rho : finals[k + 1].u;
                errs.push_back(l1_difference(coarse, restrict_cells(fine, ratio)));
            }
            std::vector<double> orders;
            for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
                const double p = std::log(errs[k] / errs[k + 1]) / std::log(static_cast<double>(ratio));
                orders.push_back(p);
                pass = pass && p >= min_order && (!has_max || p <= max_order);
            }
            table["fields"][field] = {{"l1_differences", errs}, {"observed_orders", orders}};
        }
        table["pass"] = pass;
        out.table = table;
        out.exit_code = pass ? exit_ok : exit_check_failed;
    } catch (const ConfigError& e) {
        out.exit_code = exit_config_error;
        out.error = e.what();
    } catch (const DomainError& e) {
        out.exit_code = exit_config_error;
        out.error = e.what();
    } catch (const SolverDiverged& e) {
        out.exit_code = exit_solver_failed;
        out.error = e.what();
    } catch (const VacuumReached& e) {
        out.exit_code = exit_solver_failed;
        out.error = e.what();
    }
    if (!out.error.empty())
        out.table = {{"error", out.error}, {"pass", false}};
    return out;
}

ZfieldOutcome run_zfield_suite(std::uint64_t seed, int count)
{
    ZfieldOutcome out;
    if (count < 1) {
        out.exit_code = exit_config_error;
        out.report = "count must be at least 1\n";
        return out;
    }
    const zfield::SuiteReport rep = zfield::verify_identities(seed, count);
    std::ostringstream os;
    os << "rotation-field identity suite: seed " << seed << ", " << count << " random polynomials\n";
    for (const auto& l : rep.lines)
        os << "  " << l << "\n";
    os << "total checks: " << rep.checks << "\n";
    if (rep.pass) {
        os << "PASS\n";
    } else {
        os << "FAIL: " << rep.first_failure << "\n";
        out.exit_code = exit_check_failed;
    }
    out.report = os.str();
    return out;
}

} // namespace expball
