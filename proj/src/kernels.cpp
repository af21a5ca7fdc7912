#include "expball/kernels.hpp"

#include "expball/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace expball::kernels {

AleFlux ale_rusanov(const GasModel& g, double rho_l, double v_l, double rho_r, double v_r, double w)
{
    const double u_l = v_l + w;
    const double u_r = v_r + w;
    const double p_l = pressure(g, rho_l);
    const double p_r = pressure(g, rho_r);
    const double a = std::max(std::abs(v_l) + std::sqrt(sound_speed2(g, rho_l)),
                              std::abs(v_r) + std::sqrt(sound_speed2(g, rho_r)));

    AleFlux f;
    f.mass = 0.5 * (rho_l * v_l + rho_r * v_r) - 0.5 * a * (rho_r - rho_l);
    f.momentum = 0.5 * (rho_l * u_l * v_l + p_l + rho_r * u_r * v_r + p_r)
        - 0.5 * a * (rho_r * u_r - rho_l * u_l);
    return f;
}

void EulerWorkspace::resize(std::size_t n)
{
    rho_ext.resize(n + 4);
    v_ext.resize(n + 4);
    slope_rho.resize(n + 4);
    slope_v.resize(n + 4);
    flux_mass.resize(n + 1);
    flux_mom.resize(n + 1);
}

namespace {

// Two ghost layers per side: even density and odd relative velocity at the
// centre, the same mirror about the wall (v = u - w is odd about a wall
// moving with the mesh).
void fill_extended(const EulerResidualArgs& a, EulerWorkspace& ws)
{
    const std::size_t n = a.rho.size();
    ws.resize(n);
    std::copy(a.rho.begin(), a.rho.end(), ws.rho_ext.begin() + 2);
    std::copy(a.v.begin(), a.v.end(), ws.v_ext.begin() + 2);
    ws.rho_ext[1] = a.rho[0];
    ws.rho_ext[0] = a.rho[1];
    ws.v_ext[1] = -a.v[0];
    ws.v_ext[0] = -a.v[1];
    ws.rho_ext[n + 2] = a.rho[n - 1];
    ws.rho_ext[n + 3] = a.rho[n - 2];
    ws.v_ext[n + 2] = -a.v[n - 1];
    ws.v_ext[n + 3] = -a.v[n - 2];
}

inline void slope_at(const EulerResidualArgs& a, EulerWorkspace& ws, std::size_t k)
{
    if (a.scheme == Scheme::first_order) {
        ws.slope_rho[k] = 0.0;
        ws.slope_v[k] = 0.0;
        return;
    }
    ws.slope_rho[k] = minmod(ws.rho_ext[k] - ws.rho_ext[k - 1], ws.rho_ext[k + 1] - ws.rho_ext[k]);
    ws.slope_v[k] = minmod(ws.v_ext[k] - ws.v_ext[k - 1], ws.v_ext[k + 1] - ws.v_ext[k]);
}

// Face j sits at xi = j / n between extended cells j + 1 and j + 2.
inline void face_flux(const EulerResidualArgs& a, EulerWorkspace& ws, std::size_t j, std::size_t n)
{
    if (j == 0) {
        // zero area at the centre
        ws.flux_mass[0] = 0.0;
        ws.flux_mom[0] = 0.0;
        return;
    }
    const std::size_t kl = j + 1;
    const std::size_t kr = j + 2;
    const double rho_l = ws.rho_ext[kl] + 0.5 * ws.slope_rho[kl];
    const double v_l = ws.v_ext[kl] + 0.5 * ws.slope_v[kl];
    const double rho_r = ws.rho_ext[kr] - 0.5 * ws.slope_rho[kr];
    const double v_r = ws.v_ext[kr] - 0.5 * ws.slope_v[kr];
    const double xi = static_cast<double>(j) / static_cast<double>(n);
    const AleFlux f = ale_rusanov(*a.gas, rho_l, v_l, rho_r, v_r, xi * a.Rdot);
    ws.flux_mass[j] = xi * xi * f.mass;
    ws.flux_mom[j] = xi * xi * f.momentum;
}

inline void cell_update(const EulerResidualArgs& a, const EulerWorkspace& ws, std::size_t i, std::size_t n,
                        std::span<double> d_mass, std::span<double> d_mom)
{
    const double nd = static_cast<double>(n);
    const double xl = static_cast<double>(i) / nd;
    const double xr = static_cast<double>(i + 1) / nd;
    const double vol = (xr * xr * xr - xl * xl * xl) / 3.0;
    const double R2 = a.R * a.R;
    const double src = pressure(*a.gas, a.rho[i]) * (xr * xr - xl * xl);
    d_mass[i] = -R2 * (ws.flux_mass[i + 1] - ws.flux_mass[i]) / vol;
    d_mom[i] = R2 * (src - (ws.flux_mom[i + 1] - ws.flux_mom[i])) / vol;
}

} // namespace

void euler_residual_serial(const EulerResidualArgs& a, EulerWorkspace& ws,
                           std::span<double> d_mass, std::span<double> d_mom)
{
    const std::size_t n = a.rho.size();
    fill_extended(a, ws);
    for (std::size_t k = 1; k <= n + 2; ++k)
        slope_at(a, ws, k);
    for (std::size_t j = 0; j <= n; ++j)
        face_flux(a, ws, j, n);
    for (std::size_t i = 0; i < n; ++i)
        cell_update(a, ws, i, n, d_mass, d_mom);
}

void euler_residual_omp(const EulerResidualArgs& a, EulerWorkspace& ws,
                        std::span<double> d_mass, std::span<double> d_mom)
{
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rho.size());
    fill_extended(a, ws);
#pragma omp parallel
    {
#pragma omp for schedule(static)
        for (std::ptrdiff_t k = 1; k <= n + 2; ++k)
            slope_at(a, ws, static_cast<std::size_t>(k));
#pragma omp for schedule(static)
        for (std::ptrdiff_t j = 0; j <= n; ++j)
            face_flux(a, ws, static_cast<std::size_t>(j), static_cast<std::size_t>(n));
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            cell_update(a, ws, static_cast<std::size_t>(i), static_cast<std::size_t>(n), d_mass, d_mom);
    }
}

void euler_residual(Backend b, const EulerResidualArgs& a, EulerWorkspace& ws,
                    std::span<double> d_mass, std::span<double> d_mom)
{
    if (b == Backend::openmp)
        euler_residual_omp(a, ws, d_mass, d_mom);
    else
        euler_residual_serial(a, ws, d_mass, d_mom);
}

double max_signal_speed(Backend b, const GasModel& g, std::span<const double> rho, std::span<const double> v)
{
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(rho.size());
    double smax = 0.0;
    if (b == Backend::openmp) {
#pragma omp parallel for reduction(max : smax) schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            smax = std::max(smax, std::abs(v[i]) + std::sqrt(sound_speed2(g, rho[i])));
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            smax = std::max(smax, std::abs(v[i]) + std::sqrt(sound_speed2(g, rho[i])));
    }
    return smax;
}

namespace {

// Returns false on a nonpositive Bernoulli argument.
inline bool potential_node(const PotentialRhsArgs& a, std::size_t j, std::size_t n_intervals,
                           std::span<double> d_phi, std::span<double> d_psi)
{
    const double h = 1.0 / static_cast<double>(n_intervals);
    const double xi = static_cast<double>(j) * h;
    const double hr = h * a.R;
    const std::size_t k = j + 1;
    const auto& phi = a.phi_ext;
    const auto& psi = a.psi_ext;

    const double phi_r = (phi[k + 1] - phi[k - 1]) / (2.0 * hr);
    const double phi_rr = (phi[k + 1] - 2.0 * phi[k] + phi[k - 1]) / (hr * hr);
    const double psi_r = (psi[k + 1] - psi[k - 1]) / (2.0 * hr);
    const double arg = a.gas->B0() - psi[k] - 0.5 * phi_r * phi_r;
    if (!(arg > 0.0))
        return false;
    const double c2 = (a.gas->gamma() - 1.0) * arg;
    const double w = xi * a.Rdot;
    // (2/r) phi_r -> 2 phi_rr at the centre
    const double geo = j == 0 ? 2.0 * phi_rr : 2.0 * phi_r / (xi * a.R);

    d_phi[j] = psi[k] + w * phi_r;
    d_psi[j] = -2.0 * phi_r * psi_r - (phi_r * phi_r - c2) * phi_rr + c2 * geo + w * psi_r;
    return true;
}

[[noreturn]] void throw_vacuum(const PotentialRhsArgs& a, std::size_t j, std::size_t n_intervals)
{
    const double r = a.R * static_cast<double>(j) / static_cast<double>(n_intervals);
    throw VacuumReached("potential solver: Bernoulli argument nonpositive at node " + std::to_string(j), a.t, r);
}

} // namespace

void potential_rhs_serial(const PotentialRhsArgs& a, std::span<double> d_phi, std::span<double> d_psi)
{
    const std::size_t nodes = a.phi_ext.size() - 2;
    for (std::size_t j = 0; j < nodes; ++j)
        if (!potential_node(a, j, nodes - 1, d_phi, d_psi))
            throw_vacuum(a, j, nodes - 1);
}

void potential_rhs_omp(const PotentialRhsArgs& a, std::span<double> d_phi, std::span<double> d_psi)
{
    const std::ptrdiff_t nodes = static_cast<std::ptrdiff_t>(a.phi_ext.size()) - 2;
    std::ptrdiff_t first_bad = std::numeric_limits<std::ptrdiff_t>::max();
#pragma omp parallel for reduction(min : first_bad) schedule(static)
    for (std::ptrdiff_t j = 0; j < nodes; ++j)
        if (!potential_node(a, static_cast<std::size_t>(j), static_cast<std::size_t>(nodes - 1), d_phi, d_psi))
            first_bad = std::min(first_bad, j);
    if (first_bad != std::numeric_limits<std::ptrdiff_t>::max())
        throw_vacuum(a, static_cast<std::size_t>(first_bad), static_cast<std::size_t>(nodes - 1));
}

void potential_rhs(Backend b, const PotentialRhsArgs& a, std::span<double> d_phi, std::span<double> d_psi)
{
    if (b == Backend::openmp)
        potential_rhs_omp(a, d_phi, d_psi);
    else
        potential_rhs_serial(a, d_phi, d_psi);
}

} // namespace expball::kernels
