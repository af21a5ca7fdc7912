#include "expball/diagnostics.hpp"

#include "expball/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace expball {

DecayConfig DecayConfig::for_gas(const GasModel& g)
{
    DecayConfig c;
    c.mu = 6.0 * g.gamma() - 9.0;
    c.delta = 0.6 * (g.gamma() - 1.0);
    return c;
}

void DecayConfig::validate(const GasModel& g) const
{
    if (!(delta > 0.0) || delta > 0.6 * (g.gamma() - 1.0) * (1.0 + 1e-12))
        throw DomainError("delta must lie in (0, 3 (gamma - 1) / 5]");
    if (!(fit_window > 0.0 && fit_window <= 1.0))
        throw DomainError("fit window fraction must lie in (0, 1]");
}

namespace {

struct CellSums
{
    double mass = 0.0;
    double dtphi2 = 0.0; ///< int (D_t dPhi)^2 dS
    double grad2 = 0.0;  ///< int (d_r dPhi)^2 dS
    double ratio_min = std::numeric_limits<double>::infinity();
    double ratio_max = 0.0;
    double dev_u = 0.0;
    double dev_grad = 0.0;
    double dtphi = 0.0;
    double c2_ratio = std::numeric_limits<double>::infinity();
};

CellSums scan(const FlowState& s, const GasModel& g, const ExpansionProfile& p)
{
    const std::size_t n = s.size();
    const Grid grid(n);
    const double R = p.radius(s.t);
    const double R3 = R * R * R;
    const double L = p.L;
    const double h_hat = enthalpy(g, 1.0 / R3);
    const double c2_hat = sound_speed2(g, 1.0 / R3);
    const ExtendedState e = fill_ghosts(s, p);
    const double shell = 4.0 * M_PI * R3;

    CellSums c;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = grid.center(i);
        const double vol = shell * grid.volume(i);
        const double du = s.u[i] - L * xi; // u_hat = L r / R = L xi
        const double dtphi = h_hat - enthalpy(g, s.rho[i]) - 0.5 * du * du;
        const double radial = R * std::abs((e.u[i + 3] - e.u[i + 1]) / (2.0 * grid.dxi() * R) - L / R);
        const double tangential = std::abs(s.u[i] / xi - L);
        const double ratio = s.rho[i] * R3;

        c.mass += s.rho[i] * vol;
        c.dtphi2 += dtphi * dtphi * vol;
        c.grad2 += du * du * vol;
        c.ratio_min = std::min(c.ratio_min, ratio);
        c.ratio_max = std::max(c.ratio_max, ratio);
        c.dev_u = std::max(c.dev_u, std::abs(du));
        c.dev_grad = std::max(c.dev_grad, radial + tangential);
        c.dtphi = std::max(c.dtphi, std::abs(dtphi));
        c.c2_ratio = std::min(c.c2_ratio, sound_speed2(g, s.rho[i]) / c2_hat);
    }
    return c;
}

double integrand_from(const CellSums& c, double R, const GasModel& g, const DecayConfig& cfg)
{
    const double k = 3.0 * (g.gamma() - 1.0);
    return std::pow(R, cfg.mu - 1.0 - cfg.delta) * c.dtphi2 + std::pow(R, cfg.mu - 1.0 - k) * c.grad2;
}

} // namespace

double spacetime_integrand(const FlowState& s, const GasModel& g, const ExpansionProfile& p,
                           const DecayConfig& cfg)
{
    return integrand_from(scan(s, g, p), p.radius(s.t), g, cfg);
}

DiagnosticRecord record(const FlowState& s, const GasModel& g, const ExpansionProfile& p,
                        const DecayConfig& cfg, double prev_cum, double dt_elapsed)
{
    const CellSums c = scan(s, g, p);
    const double R = p.radius(s.t);
    const double k = 3.0 * (g.gamma() - 1.0);
    const double a = 1.0 + std::pow(R, -cfg.delta);

    DiagnosticRecord r;
    r.t = s.t;
    r.R = R;
    r.mass = c.mass;
    r.rho_ratio_min = c.ratio_min;
    r.rho_ratio_max = c.ratio_max;
    r.dev_u_sup = c.dev_u;
    r.dev_grad_sup = c.dev_grad;
    r.dtphi_sup = c.dtphi;
    r.energy_E = std::pow(R, cfg.mu) * a * c.dtphi2 + std::pow(R, cfg.mu - k) * c.grad2;
    r.cum_spacetime = prev_cum + dt_elapsed * integrand_from(c, R, g, cfg);
    r.c2_floor_ratio = c.c2_ratio;
    return r;
}

Recorder::Recorder(GasModel g, ExpansionProfile p, DecayConfig cfg)
    : gas_(g), profile_(p), cfg_(cfg)
{}

void Recorder::on_step(double dt, const FlowState& s)
{
    cum_ += dt * spacetime_integrand(s, gas_, profile_, cfg_);
}

void Recorder::on_observe(std::size_t, const FlowState& s)
{
    series_.push_back(record(s, gas_, profile_, cfg_, cum_, 0.0));
}

SandwichResult density_sandwich(const std::vector<DiagnosticRecord>& series)
{
    SandwichResult res;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    for (const auto& r : series) {
        if (r.t < 1.0)
            continue;
        lo = std::min(lo, r.rho_ratio_min);
        hi = std::max(hi, r.rho_ratio_max);
        ++used;
    }
    if (used == 0)
        throw DomainError("density sandwich needs records with t >= 1");
    res.lower_margin = lo - 0.5;
    res.upper_margin = 1.5 - hi;
    res.pass = res.lower_margin >= 0.0 && res.upper_margin >= 0.0;
    return res;
}

ConvergenceResult velocity_convergence(const std::vector<DiagnosticRecord>& series, double factor)
{
    if (series.size() < 2 || series.back().R < 10.0 * series.front().R * (1.0 - 1e-12))
        throw DomainError("velocity convergence needs a series spanning a decade in R");
    ConvergenceResult res;
    bool any = false;
    for (const auto& r : series) {
        if (r.t >= 1.0 && r.t <= 2.0) {
            res.early_max = std::max(res.early_max, r.dev_u_sup + r.dev_grad_sup);
            any = true;
        }
    }
    if (!any)
        throw DomainError("velocity convergence needs records with 1 <= t <= 2");
    res.final_value = series.back().dev_u_sup + series.back().dev_grad_sup;
    res.pass = res.final_value <= factor * res.early_max;
    return res;
}

bool monotone_after(const std::vector<DiagnosticRecord>& series, double t_from, double ripple)
{
    double running = std::numeric_limits<double>::infinity();
    for (const auto& r : series) {
        if (r.t < t_from)
            continue;
        if (r.dev_u_sup > ripple * running)
            return false;
        running = std::min(running, r.dev_u_sup);
    }
    return true;
}

double field_value(const DiagnosticRecord& r, Field f)
{
    switch (f) {
    case Field::dev_u_sup: return r.dev_u_sup;
    case Field::dev_grad_sup: return r.dev_grad_sup;
    case Field::dtphi_sup: return r.dtphi_sup;
    case Field::energy_E: return r.energy_E;
    case Field::rho_ratio_max: return r.rho_ratio_max;
    case Field::c2_floor_ratio: return r.c2_floor_ratio;
    }
    return 0.0;
}

Field field_from_name(const std::string& name)
{
    for (Field f : {Field::dev_u_sup, Field::dev_grad_sup, Field::dtphi_sup, Field::energy_E,
                    Field::rho_ratio_max, Field::c2_floor_ratio})
        if (field_name(f) == name)
            return f;
    throw DomainError("unknown diagnostic field '" + name + "'");
}

std::string field_name(Field f)
{
    switch (f) {
    case Field::dev_u_sup: return "dev_u_sup";
    case Field::dev_grad_sup: return "dev_grad_sup";
    case Field::dtphi_sup: return "dtphi_sup";
    case Field::energy_E: return "energy_E";
    case Field::rho_ratio_max: return "rho_ratio_max";
    case Field::c2_floor_ratio: return "c2_floor_ratio";
    }
    return {};
}

DecayFit decay_fit(const std::vector<DiagnosticRecord>& series, Field f, const DecayConfig& cfg)
{
    if (series.empty())
        throw DomainError("decay fit on an empty series");
    const double lo = std::log(series.front().R);
    const double hi = std::log(series.back().R);
    const double start = hi - cfg.fit_window * (hi - lo);

    std::vector<double> xs, ys;
    for (const auto& r : series) {
        const double x = std::log(r.R);
        if (x < start)
            continue;
        const double v = field_value(r, f);
        if (!(v > 0.0))
            throw DomainError("decay fit undefined: nonpositive " + field_name(f) + " in window");
        xs.push_back(x);
        ys.push_back(std::log(v));
    }
    if (xs.size() < 20)
        throw DomainError("decay fit needs at least 20 records in the window");

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    DecayFit fit;
    fit.points = xs.size();
    fit.exponent = sxy / sxx;
    double sse = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double e = ys[k] - (my + fit.exponent * (xs[k] - mx));
        sse += e * e;
    }
    fit.stderr_ = std::sqrt(sse / (n - 2.0) / sxx);
    return fit;
}

VacuumResult vacuum_floor(const std::vector<DiagnosticRecord>& series, const GasModel&)
{
    VacuumResult res;
    res.min_ratio = std::numeric_limits<double>::infinity();
    res.max_ratio = -std::numeric_limits<double>::infinity();
    for (const auto& r : series) {
        res.min_ratio = std::min(res.min_ratio, r.c2_floor_ratio);
        res.max_ratio = std::max(res.max_ratio, r.c2_floor_ratio);
    }
    res.pass = !series.empty() && res.min_ratio >= 0.5 && res.max_ratio <= 2.0;
    return res;
}

EnergyResult energy_check(const std::vector<DiagnosticRecord>& series, double factor, double tol)
{
    EnergyResult res;
    if (series.size() < 2)
        throw DomainError("energy check needs at least two records");
    const double e0 = series.front().energy_E;
    double emax = 0.0;
    for (const auto& r : series)
        emax = std::max(emax, r.energy_E);
    res.max_ratio = e0 > 0.0 ? emax / e0 : (emax > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    res.bounded = emax <= factor * e0;

    // slope of cum_spacetime in log R over roughly the last 0.1 of log R
    const DiagnosticRecord& last = series.back();
    const double x1 = std::log(last.R);
    std::size_t k = series.size() - 2;
    while (k > 0 && std::log(series[k].R) > x1 - 0.1)
        --k;
    const DiagnosticRecord& prev = series[k];
    const double dx = x1 - std::log(prev.R);
    if (last.cum_spacetime <= 0.0) {
        res.final_slope_fraction = 0.0;
    } else {
        const double slope = dx > 0.0 ? (last.cum_spacetime - prev.cum_spacetime) / dx : 0.0;
        res.final_slope_fraction = slope / last.cum_spacetime;
    }
    res.converged = res.final_slope_fraction <= tol;
    return res;
}

} // namespace expball
