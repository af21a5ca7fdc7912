#include "expball/potential1d.hpp"

#include "expball/errors.hpp"
#include "expball/stepping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace expball {

PotentialState init_potential(const GasModel&, const ExpansionProfile& p, const Grid& grid,
                              const InitialData& data)
{
    data.validate();
    const std::size_t n = grid.size();
    const double R = p.radius(0.0);
    const double L = p.L;
    const double eps = data.mode == InitMode::potential_bump ? data.epsilon : 0.0;
    PotentialState s;
    s.phi.resize(n + 1);
    s.psi.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const double xi = grid.face(j);
        const double r = xi * R;
        s.phi[j] = 0.5 * L * r * r + eps * data.bump(xi);
        s.psi[j] = -0.5 * L * L * r * r + eps * data.phi1_scale * data.bump(xi);
    }
    return s;
}

PotentialGhosts fill_potential_ghosts(const PotentialState& s, const ExpansionProfile& p)
{
    const std::size_t n = s.intervals();
    const double hr = p.radius(s.t) / static_cast<double>(n);
    PotentialGhosts e;
    e.phi.resize(n + 3);
    e.psi.resize(n + 3);
    std::copy(s.phi.begin(), s.phi.end(), e.phi.begin() + 1);
    std::copy(s.psi.begin(), s.psi.end(), e.psi.begin() + 1);
    e.phi[0] = s.phi[1];
    e.psi[0] = s.psi[1];

    const double rate = p.rate(s.t);
    e.phi[n + 2] = s.phi[n - 1] + 2.0 * hr * rate;
    const double phi_rr = (e.phi[n + 2] - 2.0 * s.phi[n] + s.phi[n - 1]) / (hr * hr);
    e.psi[n + 2] = s.psi[n - 1] + 2.0 * hr * (p.accel(s.t) - rate * phi_rr);
    return e;
}

double potential_cfl_dt(const PotentialState& s, const GasModel& g, const ExpansionProfile& p, double cfl)
{
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw DomainError("cfl must lie in (0, 1]");
    const std::size_t n = s.intervals();
    const double h = 1.0 / static_cast<double>(n);
    const double R = p.radius(s.t);
    const double rate = p.rate(s.t);
    const PotentialGhosts e = fill_potential_ghosts(s, p);
    double smax = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        const double phi_r = (e.phi[j + 2] - e.phi[j]) / (2.0 * h * R);
        const double arg = g.B0() - s.psi[j] - 0.5 * phi_r * phi_r;
        if (!(arg > 0.0))
            throw VacuumReached("potential solver reached vacuum", s.t, static_cast<double>(j) * h * R);
        const double c = std::sqrt((g.gamma() - 1.0) * arg);
        smax = std::max(smax, std::abs(phi_r - static_cast<double>(j) * h * rate) + c);
    }
    if (!std::isfinite(smax))
        throw SolverDiverged("non-finite potential signal speed", s.t, 0);
    return cfl * h * R / smax;
}

namespace {

void rhs(const PotentialState& s, const GasModel& g, const ExpansionProfile& p, Backend backend,
         std::vector<double>& d_phi, std::vector<double>& d_psi)
{
    const PotentialGhosts e = fill_potential_ghosts(s, p);
    d_phi.resize(s.nodes());
    d_psi.resize(s.nodes());
    kernels::PotentialRhsArgs a{&g, s.t, p.radius(s.t), p.rate(s.t), e.phi, e.psi};
    kernels::potential_rhs(backend, a, d_phi, d_psi);
}

void check_finite(const PotentialState& s)
{
    for (std::size_t j = 0; j < s.nodes(); ++j)
        if (!std::isfinite(s.phi[j]) || !std::isfinite(s.psi[j]))
            throw SolverDiverged("non-finite potential at node " + std::to_string(j), s.t, j);
}

// s + c * (dphi, dpsi) at time s.t + c
PotentialState axpy(const PotentialState& s, double c, const std::vector<double>& dphi,
                    const std::vector<double>& dpsi)
{
    PotentialState out;
    out.t = s.t + c;
    out.phi.resize(s.nodes());
    out.psi.resize(s.nodes());
    for (std::size_t j = 0; j < s.nodes(); ++j) {
        out.phi[j] = s.phi[j] + c * dphi[j];
        out.psi[j] = s.psi[j] + c * dpsi[j];
    }
    return out;
}

} // namespace

PotentialState step_potential(const PotentialState& s, double dt, const GasModel& g, const ExpansionProfile& p,
                              Backend backend)
{
    std::vector<double> k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q;
    rhs(s, g, p, backend, k1p, k1q);
    const PotentialState s2 = axpy(s, 0.5 * dt, k1p, k1q);
    rhs(s2, g, p, backend, k2p, k2q);
    const PotentialState s3 = axpy(s, 0.5 * dt, k2p, k2q);
    rhs(s3, g, p, backend, k3p, k3q);
    const PotentialState s4 = axpy(s, dt, k3p, k3q);
    rhs(s4, g, p, backend, k4p, k4q);

    PotentialState out;
    out.t = s.t + dt;
    out.phi.resize(s.nodes());
    out.psi.resize(s.nodes());
    for (std::size_t j = 0; j < s.nodes(); ++j) {
        out.phi[j] = s.phi[j] + dt / 6.0 * (k1p[j] + 2.0 * k2p[j] + 2.0 * k3p[j] + k4p[j]);
        out.psi[j] = s.psi[j] + dt / 6.0 * (k1q[j] + 2.0 * k2q[j] + 2.0 * k3q[j] + k4q[j]);
    }
    check_finite(out);
    return out;
}

NodeFlow to_flow(const PotentialState& s, const GasModel& g, const ExpansionProfile& p)
{
    const std::size_t n = s.intervals();
    const double h = 1.0 / static_cast<double>(n);
    const double R = p.radius(s.t);
    const PotentialGhosts e = fill_potential_ghosts(s, p);
    NodeFlow f;
    f.t = s.t;
    f.xi.resize(n + 1);
    f.rho.resize(n + 1);
    f.u.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        f.xi[j] = static_cast<double>(j) * h;
        f.u[j] = (e.phi[j + 2] - e.phi[j]) / (2.0 * h * R);
        try {
            f.rho[j] = density_from_potential(g, s.psi[j], f.u[j] * f.u[j]);
        } catch (const VacuumReached&) {
            throw VacuumReached("potential state has no density", s.t, f.xi[j] * R);
        }
    }
    return f;
}

FlowState to_cell_flow(const PotentialState& s, const GasModel& g, const ExpansionProfile& p)
{
    const std::size_t n = s.intervals();
    const double hr = p.radius(s.t) / static_cast<double>(n);
    const PotentialGhosts e = fill_potential_ghosts(s, p);
    FlowState f;
    f.t = s.t;
    f.rho.resize(n);
    f.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // nodes i, i + 1 sit at ghost indices i + 1, i + 2
        f.u[i] = (e.phi[i + 2] - e.phi[i + 1]) / hr;
        const double psi_c = (-e.psi[i] + 9.0 * e.psi[i + 1] + 9.0 * e.psi[i + 2] - e.psi[i + 3]) / 16.0;
        try {
            f.rho[i] = density_from_potential(g, psi_c, f.u[i] * f.u[i]);
        } catch (const VacuumReached&) {
            throw VacuumReached("potential state has no density", s.t, (static_cast<double>(i) + 0.5) * hr);
        }
    }
    return f;
}

std::vector<double> material_derivative_field(const PotentialState& s, const GasModel& g,
                                              const ExpansionProfile& p)
{
    const NodeFlow f = to_flow(s, g, p);
    const BackgroundSlice b = background(g, p, s.t);
    const double h_hat = enthalpy(g, b.rho_hat);
    const double R = p.radius(s.t);
    std::vector<double> out(f.xi.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double du = f.u[j] - b.u_hat(f.xi[j] * R);
        out[j] = h_hat - enthalpy(g, f.rho[j]) - 0.5 * du * du;
    }
    return out;
}

std::vector<double> material_derivative_direct(const PotentialState& s, const GasModel& g,
                                               const ExpansionProfile& p)
{
    const std::size_t n = s.intervals();
    const double h = 1.0 / static_cast<double>(n);
    const double R = p.radius(s.t);
    const PotentialGhosts e = fill_potential_ghosts(s, p);
    // perturbation potential on nodes and ghosts
    std::vector<double> dot(n + 3);
    for (std::size_t k = 0; k < n + 3; ++k) {
        const double xi = (static_cast<double>(k) - 1.0) * h;
        dot[k] = e.phi[k] - background_potential(g, p, s.t, std::abs(xi) * R);
    }
    std::vector<double> out(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const double r = static_cast<double>(j) * h * R;
        const double dot_r = (dot[j + 2] - dot[j]) / (2.0 * h * R);
        const double dot_t = s.psi[j] - background_potential_dt(g, p, s.t, r);
        out[j] = dot_t + p.L * r / R * dot_r;
    }
    return out;
}

double background_node_error(const PotentialState& s, const GasModel& g, const ExpansionProfile& p)
{
    const std::size_t n = s.intervals();
    const double R = p.radius(s.t);
    double err = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        const double r = static_cast<double>(j) / static_cast<double>(n) * R;
        err = std::max(err, std::abs(s.phi[j] - background_potential(g, p, s.t, r)));
    }
    return err;
}

double wall_neumann_residual(const PotentialState& s, const ExpansionProfile& p)
{
    const std::size_t n = s.intervals();
    const double hr = p.radius(s.t) / static_cast<double>(n);
    const double d = (3.0 * s.phi[n] - 4.0 * s.phi[n - 1] + s.phi[n - 2]) / (2.0 * hr);
    return d - p.rate(s.t);
}

PotentialRunResult run_potential(const GasModel& g, const ExpansionProfile& p, const Grid& grid,
                                 const InitialData& data, const PotentialRunControl& ctl,
                                 const PotentialObserver& observer,
                                 const std::function<void(double, const PotentialState&)>& hook)
{
    PotentialState s = init_potential(g, p, grid, data);
    if (!(ctl.t_end > s.t))
        throw DomainError("t_end must exceed the start time");
    PotentialRunResult res;
    res.steps = detail::march(
        s, p, ctl.t_end, ctl.cadence,
        [&](const PotentialState& st) { return potential_cfl_dt(st, g, p, ctl.cfl); },
        [&](const PotentialState& st, double dt) { return step_potential(st, dt, g, p, ctl.backend); },
        [&](std::size_t k, const PotentialState& st) {
            if (observer)
                observer(k, st);
        },
        [&](double dt, const PotentialState& st) {
            if (hook)
                hook(dt, st);
        });
    res.final = std::move(s);
    return res;
}

LinearizedState init_linearized(const Grid& grid, const InitialData& data)
{
    data.validate();
    const std::size_t n = grid.size();
    LinearizedState s;
    s.phi.resize(n + 1);
    s.psi.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const double xi = grid.face(j);
        s.phi[j] = data.epsilon * data.bump(xi);
        s.psi[j] = data.epsilon * data.phi1_scale * data.bump(xi);
    }
    return s;
}

namespace {

void linearized_rhs(const LinearizedState& s, const GasModel& g, const ExpansionProfile& p,
                    std::vector<double>& d_phi, std::vector<double>& d_psi)
{
    if (p.kind != ProfileKind::linear)
        throw DomainError("linearised operator needs the linear wall law");
    const std::size_t n = s.phi.size() - 1;
    const double h = 1.0 / static_cast<double>(n);
    const double R = p.radius(s.t);
    const double L = p.L;
    const double hr = h * R;
    const double gam = g.gamma();
    const double c2 = sound_speed2(g, 1.0 / (R * R * R));

    std::vector<double> ph(n + 3), ps(n + 3);
    std::copy(s.phi.begin(), s.phi.end(), ph.begin() + 1);
    std::copy(s.psi.begin(), s.psi.end(), ps.begin() + 1);
    ph[0] = s.phi[1];
    ps[0] = s.psi[1];
    ph[n + 2] = s.phi[n - 1];
    const double wall_rr = (ph[n + 2] - 2.0 * s.phi[n] + s.phi[n - 1]) / (hr * hr);
    ps[n + 2] = s.psi[n - 1] - 2.0 * hr * L * wall_rr;

    d_phi.resize(n + 1);
    d_psi.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const std::size_t k = j + 1;
        const double xi = static_cast<double>(j) * h;
        const double r = xi * R;
        const double d_r = (ph[k + 1] - ph[k - 1]) / (2.0 * hr);
        const double d_rr = (ph[k + 1] - 2.0 * ph[k] + ph[k - 1]) / (hr * hr);
        const double d_tr = (ps[k + 1] - ps[k - 1]) / (2.0 * hr);

        const double bg_r = L * r / R;
        const double bg_rr = L / R;
        const double bg_tr = -L * L * r / (R * R);
        const double geo = j == 0 ? 2.0 * d_rr : 2.0 * d_r / r;
        const double w = xi * L;

        const double d_tt = -2.0 * bg_r * d_tr - (bg_r * bg_r - c2) * d_rr + c2 * geo
            - 3.0 * (gam - 1.0) * L / R * s.psi[j]
            - (2.0 * bg_tr + (gam + 1.0) * bg_r * bg_rr + 2.0 * (gam - 1.0) * L * L * r / (R * R)) * d_r;
        d_phi[j] = s.psi[j] + w * d_r;
        d_psi[j] = d_tt + w * d_tr;
    }
}

LinearizedState lin_axpy(const LinearizedState& s, double c, const std::vector<double>& a,
                         const std::vector<double>& b)
{
    LinearizedState out;
    out.t = s.t + c;
    out.phi.resize(s.phi.size());
    out.psi.resize(s.psi.size());
    for (std::size_t j = 0; j < s.phi.size(); ++j) {
        out.phi[j] = s.phi[j] + c * a[j];
        out.psi[j] = s.psi[j] + c * b[j];
    }
    return out;
}

} // namespace

LinearizedState step_linearized(const LinearizedState& s, double dt, const GasModel& g, const ExpansionProfile& p)
{
    std::vector<double> k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q;
    linearized_rhs(s, g, p, k1p, k1q);
    linearized_rhs(lin_axpy(s, 0.5 * dt, k1p, k1q), g, p, k2p, k2q);
    linearized_rhs(lin_axpy(s, 0.5 * dt, k2p, k2q), g, p, k3p, k3q);
    linearized_rhs(lin_axpy(s, dt, k3p, k3q), g, p, k4p, k4q);
    LinearizedState out;
    out.t = s.t + dt;
    out.phi.resize(s.phi.size());
    out.psi.resize(s.psi.size());
    for (std::size_t j = 0; j < s.phi.size(); ++j) {
        out.phi[j] = s.phi[j] + dt / 6.0 * (k1p[j] + 2.0 * k2p[j] + 2.0 * k3p[j] + k4p[j]);
        out.psi[j] = s.psi[j] + dt / 6.0 * (k1q[j] + 2.0 * k2q[j] + 2.0 * k3q[j] + k4q[j]);
    }
    return out;
}

} // namespace expball
