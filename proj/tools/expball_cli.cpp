// expball: command-line driver for the expanding-ball runs.

#include "expball/config.hpp"
#include "expball/errors.hpp"
#include "expball/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace expball;

void warn_exponent(const ExperimentConfig& cfg)
{
    if (!cfg.gas().in_decay_range())
        std::fprintf(stderr,
                     "warning: gamma = %g lies outside (1, 4/3); the decay estimates are not guaranteed there\n",
                     cfg.gamma);
}

int load(const std::string& path, ExperimentConfig& cfg)
{
    try {
        cfg = load_config(path);
        return exit_ok;
    } catch (const ConfigError& e) {
        if (e.line() > 0)
            std::fprintf(stderr, "config error: %s:%d: %s\n", path.c_str(), e.line(), e.what());
        else
            std::fprintf(stderr, "config error: %s: %s\n", path.c_str(), e.what());
        return exit_config_error;
    } catch (const Error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config_error;
    }
}

int finish_run(const ExperimentConfig& cfg, const ExperimentResult& res)
{
    try {
        for (const auto& path : write_artifacts(cfg, res))
            std::printf("wrote %s\n", path.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_solver_failed;
    }
    if (!res.error.empty()) {
        std::fprintf(stderr, "%s: %s\n", res.exit_code == exit_config_error ? "config error" : "solver failure",
                     res.error.c_str());
        return res.exit_code;
    }
    for (const auto& [name, v] : res.summary["checks"].items())
        std::printf("check %-16s %s\n", name.c_str(), v.value("pass", false) ? "pass" : "FAIL");
    return res.exit_code;
}

int cmd_simulate(const std::string& path)
{
    ExperimentConfig cfg;
    if (int rc = load(path, cfg))
        return rc;
    warn_exponent(cfg);
    return finish_run(cfg, run_experiment(cfg));
}

int cmd_decay_report(const std::string& path)
{
    ExperimentConfig cfg;
    if (int rc = load(path, cfg))
        return rc;
    warn_exponent(cfg);
    const ExperimentResult res = run_experiment(cfg, {"velocity", "decay", "energy_converged"});
    if (res.error.empty()) {
        const double k3 = 3.0 * (cfg.gamma - 1.0);
        const double delta = cfg.decay().delta;
        std::printf("decay fits against R (last %.0f%% of the log R span)\n", 100.0 * cfg.fit_window);
        std::printf("%-14s %12s %10s %6s %12s\n", "field", "exponent", "stderr", "pts", "bound");
        for (const auto& [name, fit] : res.summary["fits"].items()) {
            double bound = 0.0;
            if (name == "dev_u_sup" || name == "dev_grad_sup")
                bound = -k3 + delta / 2.0;
            else if (name == "dtphi_sup")
                bound = -k3;
            if (fit.contains("error")) {
                std::printf("%-14s %s\n", name.c_str(), fit["error"].get<std::string>().c_str());
                continue;
            }
            if (name == "energy_E")
                std::printf("%-14s %12.4f %10.4f %6zu %12s\n", name.c_str(), fit["exponent"].get<double>(),
                            fit["stderr"].get<double>(), fit["points"].get<std::size_t>(), "-");
            else
                std::printf("%-14s %12.4f %10.4f %6zu %12.4f\n", name.c_str(), fit["exponent"].get<double>(),
                            fit["stderr"].get<double>(), fit["points"].get<std::size_t>(), bound);
        }
    }
    return finish_run(cfg, res);
}

int cmd_converge(const std::string& path, const std::vector<std::size_t>& grids)
{
    ExperimentConfig cfg;
    if (int rc = load(path, cfg))
        return rc;
    warn_exponent(cfg);
    const ConvergenceStudy st = run_convergence(cfg, grids.empty() ? cfg.grids : grids);
    if (!st.error.empty()) {
        std::fprintf(stderr, "%s: %s\n", st.exit_code == exit_config_error ? "config error" : "solver failure",
                     st.error.c_str());
        return st.exit_code;
    }
    std::printf("%s\n", st.table.dump(2).c_str());
    try {
        namespace fs = std::filesystem;
        const fs::path dir = output_dir(cfg);
        fs::create_directories(dir);
        const fs::path out = dir / (cfg.output_prefix + "_convergence.json");
        std::ofstream(out) << st.table.dump(2) << "\n";
        std::printf("wrote %s\n", out.string().c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_solver_failed;
    }
    std::printf("%s\n", st.exit_code == exit_ok ? "PASS" : "FAIL");
    return st.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spherically symmetric expanding-ball gas dynamics"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "Run one configuration and write CSV/JSON (and SVG) output");
    sim->add_option("config", config_path, "Configuration file")->required();

    std::string conv_path, grids_arg;
    auto* conv = app.add_subcommand("converge", "Grid self-convergence study");
    conv->add_option("config", conv_path, "Configuration file")->required();
    conv->add_option("--grids", grids_arg, "Comma-separated cell counts, e.g. 100,200,400");

    std::uint64_t seed = 42;
    int count = 100;
    auto* zf = app.add_subcommand("zfield-verify", "Check the rotation-field identities on random polynomials");
    zf->add_option("--seed", seed, "Random seed");
    zf->add_option("--count", count, "Number of random polynomials");

    std::string decay_path;
    auto* dr = app.add_subcommand("decay-report", "Run and report fitted decay exponents");
    dr->add_option("config", decay_path, "Configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config_error;
    }

    if (*sim)
        return cmd_simulate(config_path);
    if (*conv) {
        std::vector<std::size_t> grids;
        if (!grids_arg.empty()) {
            std::stringstream ss(grids_arg);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    std::size_t pos = 0;
                    const long v = std::stol(tok, &pos);
                    if (pos != tok.size() || v <= 0)
                        throw std::invalid_argument(tok);
                    grids.push_back(static_cast<std::size_t>(v));
                } catch (const std::exception&) {
                    std::fprintf(stderr, "config error: bad grid size '%s'\n", tok.c_str());
                    return exit_config_error;
                }
            }
        }
        return cmd_converge(conv_path, grids);
    }
    if (*zf) {
        const ZfieldOutcome z = run_zfield_suite(seed, count);
        std::fputs(z.report.c_str(), z.exit_code == exit_config_error ? stderr : stdout);
        return z.exit_code;
    }
    if (*dr)
        return cmd_decay_report(decay_path);
    return exit_config_error;
}
