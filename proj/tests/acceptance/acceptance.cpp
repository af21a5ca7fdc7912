// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "expball/config.hpp"
#include "expball/diagnostics.hpp"
#include "expball/euler1d.hpp"
#include "expball/experiment.hpp"
#include "expball/model.hpp"
#include "expball/potential1d.hpp"
#include "expball/zfield.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#ifndef EXPBALL_CLI_PATH
#error "EXPBALL_CLI_PATH must name the command-line tool"
#endif

using namespace expball;

namespace {

// pinned tolerances
constexpr double tol_background_residual = 1e-12;
constexpr double tol_background_density = 1e-3;
constexpr double tol_potential_node = 1e-4;
constexpr double tol_mass_drift = 1e-10;
constexpr double sandwich_lo = 0.5, sandwich_hi = 1.5;
constexpr double velocity_factor = 0.1;
constexpr double decay_slack = 0.2;
constexpr double energy_factor = 10.0;
constexpr double energy_increment = 0.01;
constexpr double c2_lo = 0.5, c2_hi = 2.0;
constexpr double final_density_cap = 1e-3;
constexpr double cross_tol = 5e-3;
constexpr double muscl_min_order = 1.8;
constexpr double first_order_lo = 0.8, first_order_hi = 1.2;

// runtime budgets in seconds
constexpr double budget_background = 1.0;
constexpr double budget_preservation = 30.0;
constexpr double budget_long = 120.0;
constexpr double budget_cross = 120.0;
constexpr double budget_zfield = 5.0;

int failures = 0;

void report(int id, bool pass, const std::string& what)
{
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

class Stopwatch
{
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ExperimentConfig base_config()
{
    ExperimentConfig c; // gamma 1.2, L 0.1, eps 0.01, N 200
    c.checks = {"mass"};
    return c;
}

void criterion_1()
{
    // Residuals built from hand-derived derivatives of rho = R^-3, u = L r / R and the
    // model's values at the same point.
    Stopwatch sw;
    const GasModel g(1.2);
    const ExpansionProfile p{0.1};
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ut(0.0, 100.0), ux(0.0, 1.0);
    double worst_mass = 0, worst_mom = 0, worst_bern = 0, worst_value = 0;
    for (int k = 0; k < 1000; ++k) {
        const double t = ut(rng);
        const double R = 1.0 + 0.1 * t;
        const double r = ux(rng) * R;
        const BackgroundSlice b = background(g, p, t);
        const double c = b.u_hat_coeff;
        worst_value = std::max({worst_value, std::abs(b.rho_hat * R * R * R - 1.0), std::abs(c * R - 0.1)});
        // d_t rho + r^-2 d_r (r^2 rho u) = -3 rho R'/R + 3 rho c
        worst_mass = std::max(worst_mass, std::abs(-3.0 * b.rho_hat * 0.1 / R + 3.0 * b.rho_hat * c));
        // d_t u + u d_r u + d_r P / rho with d_t(L r / R) = -L^2 r / R^2 and d_r P = 0
        worst_mom = std::max(worst_mom, std::abs(-0.01 * r / (R * R) + c * c * r));
        const double u = b.u_hat(r);
        worst_bern = std::max(worst_bern, std::abs(background_potential_dt(g, p, t, r) + 0.5 * u * u
                                                   + enthalpy(g, b.rho_hat) - g.B0()));
    }
    // the time derivative used above is the derivative of the potential itself
    double worst_fd = 0;
    for (double t : {0.5, 3.0, 20.0, 77.0})
        for (double xi : {0.0, 0.4, 1.0}) {
            const double r = xi * p.radius(t), h = 1e-3;
            const double fd = (-background_potential(g, p, t + 2 * h, r) + 8 * background_potential(g, p, t + h, r)
                               - 8 * background_potential(g, p, t - h, r) + background_potential(g, p, t - 2 * h, r))
                / (12 * h);
            worst_fd = std::max(worst_fd, std::abs(fd - background_potential_dt(g, p, t, r)));
        }
    const double worst = std::max({worst_mass, worst_mom, worst_bern, worst_value});
    const double secs = sw.seconds();
    report(1, worst <= tol_background_residual && worst_fd <= 1e-8 && secs < budget_background,
           fmt("background residuals: mass %.2e, momentum %.2e, Bernoulli %.2e, closed form %.2e (tol %.0e); "
               "dPhi/dt vs differences %.1e; %.2f s",
               worst_mass, worst_mom, worst_bern, worst_value, tol_background_residual, worst_fd, secs));
}

void criteria_2_3()
{
    const GasModel g(1.2);
    const ExpansionProfile p{0.1};
    Stopwatch sw;
    RunControl ctl;
    ctl.t_end = p.time_at_radius(10.0);
    ctl.cadence.every_steps = 1;
    double worst = 0, m0 = -1, drift = 0;
    const Grid grid(200);
    run(g, p, grid, InitialData{}, ctl, [&](std::size_t, const FlowState& s) {
        const double R3 = std::pow(p.radius(s.t), 3);
        for (double r : s.rho)
            worst = std::max(worst, std::abs(r * R3 - 1.0));
        const double m = total_mass(s, p);
        if (m0 < 0)
            m0 = m;
        drift = std::max(drift, std::abs(m - m0) / m0);
    });
    const double t_euler = sw.seconds();

    Stopwatch sw2;
    PotentialRunControl pc;
    pc.t_end = p.time_at_radius(5.0);
    pc.cadence.every_steps = 1;
    double node = 0;
    run_potential(g, p, Grid(400), InitialData{}, pc,
                  [&](std::size_t, const PotentialState& s) { node = std::max(node, background_node_error(s, g, p)); });
    const double t_pot = sw2.seconds();
    report(2, worst <= tol_background_density && node <= tol_potential_node && t_euler < budget_preservation
               && t_pot < budget_preservation,
           fmt("euler N=200 to R=10: sup |rho R^3 - 1| = %.2e (tol %.0e, %.2f s); potential N=400 to R=5: "
               "node error %.2e (tol %.0e, %.2f s)",
               worst, tol_background_density, t_euler, node, tol_potential_node, t_pot));
    report(3, drift <= tol_mass_drift, fmt("relative mass drift %.2e (tol %.0e)", drift, tol_mass_drift));
}

void criterion_4()
{
    ExperimentConfig c = base_config();
    c.R_end = 10.0;
    c.checks = {"sandwich"};
    const ExperimentResult r = run_experiment(c);
    double lo = 1e300, hi = -1e300;
    for (const auto& rec : r.series)
        if (rec.t >= 1.0) {
            lo = std::min(lo, rec.rho_ratio_min);
            hi = std::max(hi, rec.rho_ratio_max);
        }
    report(4, r.exit_code == exit_ok && lo >= sandwich_lo && hi <= sandwich_hi,
           fmt("rho R^3 over t >= 1 in [%.4f, %.4f] (band [%.1f, %.1f])", lo, hi, sandwich_lo, sandwich_hi));
}

void criteria_5_to_8()
{
    Stopwatch sw;
    ExperimentConfig c = base_config();
    c.R_end = 50.0;
    const ExperimentResult r = run_experiment(c);
    const double secs = sw.seconds();
    if (!r.error.empty()) {
        for (int id = 5; id <= 8; ++id)
            report(id, false, "run to R=50 failed: " + r.error);
        return;
    }
    const auto& s = r.series;
    const GasModel g = c.gas();
    const DecayConfig dc = c.decay();

    double early = 0;
    for (const auto& rec : s)
        if (rec.t >= 1.0 && rec.t <= 2.0)
            early = std::max(early, rec.dev_u_sup + rec.dev_grad_sup);
    const double fin = s.back().dev_u_sup + s.back().dev_grad_sup;
    report(5, fin <= velocity_factor * early && secs < budget_long,
           fmt("dev_u + dev_grad: final %.4e vs %.1f x early max %.4e = %.4e (ratio %.3f); %.1f s", fin,
               velocity_factor, early, velocity_factor * early, fin / early, secs));

    const double k3 = 3.0 * (g.gamma() - 1.0);
    const double delta = 0.6 * (g.gamma() - 1.0);
    const DecayFit fu = decay_fit(s, Field::dev_u_sup, dc);
    const DecayFit fd = decay_fit(s, Field::dtphi_sup, dc);
    const double lim_u = -k3 + delta / 2.0 + decay_slack;
    const double lim_d = -k3 + decay_slack;
    report(6, fu.exponent <= lim_u && fd.exponent <= lim_d,
           fmt("slopes vs R: dev_u_sup %.4f +- %.4f (limit %.2f), dtphi_sup %.4f +- %.4f (limit %.2f)", fu.exponent,
               fu.stderr_, lim_u, fd.exponent, fd.stderr_, lim_d));

    const EnergyResult e = energy_check(s, energy_factor, energy_increment);
    report(7, e.bounded && e.converged,
           fmt("max energy_E / energy_E(0) = %.3f (limit %.0f): %s; final cum_spacetime increment per unit log R "
               "= %.2f%% of total (limit %.0f%%): %s",
               e.max_ratio, energy_factor, e.bounded ? "ok" : "exceeded", 100.0 * e.final_slope_fraction,
               100.0 * energy_increment, e.converged ? "ok" : "not reached"));

    const VacuumResult v = vacuum_floor(s, g);
    const double rho_max = r.summary["final"]["max_rho"].get<double>();
    report(8, v.min_ratio >= c2_lo && v.max_ratio <= c2_hi && rho_max <= final_density_cap,
           fmt("c2 ratio in [%.4f, %.4f] (band [%.1f, %.1f]); final max rho %.3e (cap %.0e)", v.min_ratio,
               v.max_ratio, c2_lo, c2_hi, rho_max, final_density_cap));
}

void criterion_9()
{
    Stopwatch sw;
    double du[2] = {0, 0};
    std::string err;
    const std::size_t grids[2] = {400, 800};
    for (int k = 0; k < 2; ++k) {
        ExperimentConfig c = base_config();
        c.solver = SolverChoice::both;
        c.t_end = 5.0;
        c.n_cells = grids[k];
        c.checks = {"cross"};
        const ExperimentResult r = run_experiment(c);
        if (!r.error.empty()) {
            err = r.error;
            break;
        }
        du[k] = r.summary["cross_validation"]["max_abs_du"].get<double>();
    }
    const double secs = sw.seconds();
    if (!err.empty()) {
        report(9, false, "cross-solver run failed: " + err);
        return;
    }
    report(9, du[0] <= cross_tol && du[1] <= 0.5 * du[0] && secs < budget_cross,
           fmt("max |u_euler - u_potential| at t=5: N=400 %.3e (tol %.0e), N=800 %.3e (ratio %.2f, need <= 0.5); "
               "%.1f s",
               du[0], cross_tol, du[1], du[1] / du[0], secs));
}

void criterion_10()
{
    bool pass = true;
    std::string detail;
    for (Scheme sc : {Scheme::muscl_minmod, Scheme::first_order}) {
        ExperimentConfig c = base_config();
        c.t_end = 1.0;
        c.scheme = sc;
        const ConvergenceStudy st = run_convergence(c, {100, 200, 400});
        if (st.exit_code == exit_config_error || st.exit_code == exit_solver_failed) {
            pass = false;
            detail += " error: " + st.error;
            continue;
        }
        const bool muscl = sc == Scheme::muscl_minmod;
        detail += muscl ? " muscl:" : "; first_order:";
        for (const char* f : {"rho", "u"}) {
            for (const auto& o : st.table["fields"][f]["observed_orders"]) {
                const double p = o.get<double>();
                pass = pass && (muscl ? p >= muscl_min_order : (p >= first_order_lo && p <= first_order_hi));
                detail += fmt(" %s %.3f", f, p);
            }
        }
    }
    report(10, pass, fmt("observed orders at t=1, N in {100, 200, 400} (need >= %.1f / in [%.1f, %.1f]):",
                         muscl_min_order, first_order_lo, first_order_hi)
                         + detail);
}

void criterion_11()
{
    Stopwatch sw;
    const zfield::SuiteReport rep = zfield::verify_identities(20240601, 100);
    const double secs = sw.seconds();
    report(11, rep.pass && rep.max_ratio <= 1.0 && secs < budget_zfield,
           fmt("%zu exact checks on 100 random polynomials, %s; sampled max |Z_i f| / (r |grad f|) = %.4f; %.2f s",
               rep.checks, rep.pass ? "all residuals zero" : rep.first_failure.c_str(), rep.max_ratio, secs));
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void criterion_12()
{
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / ("expball_determinism_" + std::to_string(::getpid()));
    const fs::path cfg = root / "sandwich.cfg";
    fs::create_directories(root);
    std::ofstream(cfg) << "# criterion 4 configuration\ngamma = 1.2\nL = 0.1\nepsilon = 0.01\nn_cells = 200\nR_end = 10\n"
                          "checks = sandwich\noutput_prefix = run\n";
    std::string csv[2], json[2];
    bool ran = true;
    for (int k = 0; k < 2; ++k) {
        const fs::path out = root / ("out" + std::to_string(k));
        const std::string cmd = "EXPBALL_OUTPUT_DIR='" + out.string() + "' '" + EXPBALL_CLI_PATH + "' simulate '"
            + cfg.string() + "' > /dev/null";
        ran = ran && std::system(cmd.c_str()) == 0;
        csv[k] = slurp(out / "run.csv");
        json[k] = slurp(out / "run.json");
    }
    const bool same = !csv[0].empty() && csv[0] == csv[1] && !json[0].empty() && json[0] == json[1];
    report(12, ran && same,
           fmt("two CLI executions: CSV %zu bytes %s, JSON %zu bytes %s", csv[0].size(),
               csv[0] == csv[1] ? "identical" : "DIFFER", json[0].size(), json[0] == json[1] ? "identical" : "DIFFER"));
    fs::remove_all(root);
}

} // namespace

int main()
{
    criterion_1();
    criteria_2_3();
    criterion_4();
    criteria_5_to_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
