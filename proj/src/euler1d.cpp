#include "expball/euler1d.hpp"

#include "expball/errors.hpp"
#include "expball/stepping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace expball {

Grid::Grid(std::size_t n_cells)
    : n_(n_cells)
{
    if (n_cells < 8)
        throw DomainError("grid needs at least 8 cells");
}

void InitialData::validate() const
{
    if (!(epsilon >= 0.0))
        throw DomainError("epsilon must be nonnegative");
    if (shape == BumpShape::compact && (!(bump_width > 0.0) || !(bump_center - bump_width > 0.0) || !(bump_center + bump_width < 1.0)))
        throw DomainError("bump support must lie inside (0, 1)");
}

double InitialData::bump(double xi) const
{
    if (shape == BumpShape::polynomial) {
        if (xi >= 1.0)
            return 0.0;
        const double q = 1.0 - xi * xi;
        return std::pow(q, 6);
    }
    const double s = (xi - bump_center) / bump_width;
    if (std::abs(s) >= 1.0)
        return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double InitialData::bump_slope(double xi) const
{
    if (shape == BumpShape::polynomial) {
        if (xi >= 1.0)
            return 0.0;
        const double q = 1.0 - xi * xi;
        return -12.0 * xi * std::pow(q, 5);
    }
    const double s = (xi - bump_center) / bump_width;
    if (std::abs(s) >= 1.0)
        return 0.0;
    const double q = 1.0 - s * s;
    return -2.0 * s / (q * q) * bump(xi) / bump_width;
}

double InitialData::bump_curvature(double xi) const
{
    if (shape == BumpShape::polynomial) {
        if (xi >= 1.0)
            return 0.0;
        const double q = 1.0 - xi * xi;
        return std::pow(q, 4) * (120.0 * xi * xi - 12.0 * q);
    }
    const double s = (xi - bump_center) / bump_width;
    if (std::abs(s) >= 1.0)
        return 0.0;
    const double q = 1.0 - s * s;
    // d/ds of f * (-2 s / q^2) with f' = f * (-2 s / q^2)
    const double g = -2.0 * s / (q * q);
    const double dg = -2.0 / (q * q) - 8.0 * s * s / (q * q * q);
    return bump(xi) * (g * g + dg) / (bump_width * bump_width);
}

FlowState init(const GasModel& g, const ExpansionProfile& p, const Grid& grid, const InitialData& data)
{
    data.validate();
    const std::size_t n = grid.size();
    FlowState s;
    s.t = 0.0;
    s.rho.resize(n);
    s.u.resize(n);
    const double R = p.radius(0.0);
    const double L = p.L;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = grid.center(i);
        if (data.mode == InitMode::background) {
            s.rho[i] = 1.0;
            s.u[i] = L * xi;
            continue;
        }
        const double r = xi * R;
        const double u = L * r + data.epsilon * data.bump_slope(xi) / R;
        const double dt_phi = -0.5 * L * L * r * r + data.epsilon * data.phi1_scale * data.bump(xi);
        try {
            s.rho[i] = density_from_potential(g, dt_phi, u * u);
        } catch (const VacuumReached&) {
            throw VacuumReached("initial data reach vacuum", 0.0, r);
        }
        s.u[i] = u;
    }
    return s;
}

namespace {

std::vector<double> relative_velocity(const FlowState& s, double Rdot)
{
    const Grid grid(s.size());
    std::vector<double> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        v[i] = s.u[i] - grid.center(i) * Rdot;
    return v;
}

void check_state(const FlowState& s, double u_max)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s.rho[i] > 0.0) || !std::isfinite(s.rho[i]))
            throw SolverDiverged("density lost positivity in cell " + std::to_string(i), s.t, i);
        if (!std::isfinite(s.u[i]) || std::abs(s.u[i]) > u_max)
            throw SolverDiverged("velocity out of bounds in cell " + std::to_string(i), s.t, i);
    }
}

} // namespace

double cfl_dt(const FlowState& s, const GasModel& g, const ExpansionProfile& p, double cfl, Backend backend)
{
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw DomainError("cfl must lie in (0, 1]");
    const Grid grid(s.size());
    const std::vector<double> v = relative_velocity(s, p.rate(s.t));
    const double smax = kernels::max_signal_speed(backend, g, s.rho, v);
    if (!std::isfinite(smax) || !(smax > 0.0))
        throw SolverDiverged("non-finite signal speed", s.t, 0);
    return cfl * grid.dxi() * p.radius(s.t) / smax;
}

FlowState step(const FlowState& s, double dt, const GasModel& g, const ExpansionProfile& p,
               const SolverOptions& opt)
{
    check_state(s, opt.u_max);
    const std::size_t n = s.size();
    const Grid grid(n);
    kernels::EulerWorkspace ws;
    std::vector<double> dm(n), dq(n);

    const double t0 = s.t;
    const double t1 = s.t + dt;
    const double R0 = p.radius(t0);
    const double R1 = p.radius(t1);
    const double R0c = R0 * R0 * R0;
    const double R1c = R1 * R1 * R1;

    // stage 1 at t0
    std::vector<double> m0(n), q0(n);
    for (std::size_t i = 0; i < n; ++i) {
        m0[i] = R0c * s.rho[i];
        q0[i] = m0[i] * s.u[i];
    }
    std::vector<double> v = relative_velocity(s, p.rate(t0));
    kernels::EulerResidualArgs args{&g, opt.scheme, R0, p.rate(t0), s.rho, v};
    kernels::euler_residual(opt.backend, args, ws, dm, dq);

    std::vector<double> m1(n), q1(n);
    FlowState mid;
    mid.t = t1;
    mid.rho.resize(n);
    mid.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        m1[i] = m0[i] + dt * dm[i];
        q1[i] = q0[i] + dt * dq[i];
        mid.rho[i] = m1[i] / R1c;
        mid.u[i] = q1[i] / m1[i];
    }
    check_state(mid, opt.u_max);

    // stage 2 at t1
    v = relative_velocity(mid, p.rate(t1));
    args = {&g, opt.scheme, R1, p.rate(t1), mid.rho, v};
    kernels::euler_residual(opt.backend, args, ws, dm, dq);

    FlowState out;
    out.t = t1;
    out.rho.resize(n);
    out.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double m = 0.5 * m0[i] + 0.5 * (m1[i] + dt * dm[i]);
        const double q = 0.5 * q0[i] + 0.5 * (q1[i] + dt * dq[i]);
        out.rho[i] = m / R1c;
        out.u[i] = q / m;
    }
    check_state(out, opt.u_max);
    return out;
}

ExtendedState fill_ghosts(const FlowState& s, const ExpansionProfile& p)
{
    const std::size_t n = s.size();
    const double wall = p.rate(s.t);
    ExtendedState e;
    e.rho.resize(n + 4);
    e.u.resize(n + 4);
    std::copy(s.rho.begin(), s.rho.end(), e.rho.begin() + 2);
    std::copy(s.u.begin(), s.u.end(), e.u.begin() + 2);
    e.rho[1] = s.rho[0];
    e.rho[0] = s.rho[1];
    e.u[1] = -s.u[0];
    e.u[0] = -s.u[1];
    e.rho[n + 2] = s.rho[n - 1];
    e.rho[n + 3] = s.rho[n - 2];
    e.u[n + 2] = 2.0 * wall - s.u[n - 1];
    e.u[n + 3] = 2.0 * wall - s.u[n - 2];
    return e;
}

kernels::AleFlux numerical_flux(Primitive left, Primitive right, double mesh_velocity, const GasModel& g)
{
    if (!(left.rho > 0.0) || !(right.rho > 0.0))
        throw DomainError("numerical_flux needs positive densities");
    return kernels::ale_rusanov(g, left.rho, left.u - mesh_velocity, right.rho, right.u - mesh_velocity,
                                mesh_velocity);
}

RunResult run(const GasModel& g, const ExpansionProfile& p, const Grid& grid, const InitialData& data,
              const RunControl& ctl, const FlowObserver& observer, const StepHook& hook)
{
    return run_from(init(g, p, grid, data), g, p, ctl, observer, hook);
}

RunResult run_from(FlowState s, const GasModel& g, const ExpansionProfile& p, const RunControl& ctl,
                   const FlowObserver& observer, const StepHook& hook)
{
    if (!(ctl.t_end > s.t))
        throw DomainError("t_end must exceed the start time");
    RunResult res;
    res.steps = detail::march(
        s, p, ctl.t_end, ctl.cadence,
        [&](const FlowState& st) { return cfl_dt(st, g, p, ctl.cfl, ctl.solver.backend); },
        [&](const FlowState& st, double dt) { return step(st, dt, g, p, ctl.solver); },
        [&](std::size_t k, const FlowState& st) {
            if (observer)
                observer(k, st);
        },
        [&](double dt, const FlowState& st) {
            if (hook)
                hook(dt, st);
        });
    res.final = std::move(s);
    return res;
}

double total_mass(const FlowState& s, const ExpansionProfile& p)
{
    const Grid grid(s.size());
    const double R = p.radius(s.t);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        sum += s.rho[i] * grid.volume(i);
    return 4.0 * M_PI * R * R * R * sum;
}

} // namespace expball
