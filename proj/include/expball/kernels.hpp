#pragma once

// Stencil kernels behind the two solvers. Each kernel has a serial reference
// loop and an OpenMP loop; both evaluate the same per-face / per-node
// arithmetic, so their outputs agree bit for bit for any thread count.

#include "expball/model.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace expball {

enum class Backend { serial, openmp };
enum class Scheme { first_order, muscl_minmod };

namespace kernels {

inline double minmod(double a, double b) noexcept
{
    if (a * b <= 0.0)
        return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

/// Rusanov flux of the moving-frame system, per unit area.
/// Velocities are relative to the mesh (v = u - w); the momentum density
/// carried by the flux is rho * (v + w).
struct AleFlux
{
    double mass = 0.0;
    double momentum = 0.0;
};

AleFlux ale_rusanov(const GasModel& g, double rho_l, double v_l, double rho_r, double v_r, double w);

/// Scratch buffers reused across residual evaluations.
struct EulerWorkspace
{
    std::vector<double> rho_ext, v_ext, slope_rho, slope_v, flux_mass, flux_mom;
    void resize(std::size_t n_cells);
};

/// Time derivative of (R^3 rho_i, R^3 rho_i u_i) on the unit reference grid.
/// `v` holds mesh-relative velocities at cell centres.
struct EulerResidualArgs
{
    const GasModel* gas = nullptr;
    Scheme scheme = Scheme::muscl_minmod;
    double R = 1.0;
    double Rdot = 0.0;
    std::span<const double> rho;
    std::span<const double> v;
};

void euler_residual_serial(const EulerResidualArgs& a, EulerWorkspace& ws,
                           std::span<double> d_mass, std::span<double> d_mom);
void euler_residual_omp(const EulerResidualArgs& a, EulerWorkspace& ws,
                        std::span<double> d_mass, std::span<double> d_mom);
void euler_residual(Backend b, const EulerResidualArgs& a, EulerWorkspace& ws,
                    std::span<double> d_mass, std::span<double> d_mom);

/// max_i (|v_i| + c(rho_i))
double max_signal_speed(Backend b, const GasModel& g, std::span<const double> rho, std::span<const double> v);

/// Right-hand side of the mapped potential equation.
/// phi_ext / psi_ext carry one ghost node on each side (size n_nodes + 2).
/// Throws VacuumReached (with the node radius) if the Bernoulli argument is nonpositive.
struct PotentialRhsArgs
{
    const GasModel* gas = nullptr;
    double t = 0.0;
    double R = 1.0;
    double Rdot = 0.0;
    std::span<const double> phi_ext;
    std::span<const double> psi_ext;
};

void potential_rhs_serial(const PotentialRhsArgs& a, std::span<double> d_phi, std::span<double> d_psi);
void potential_rhs_omp(const PotentialRhsArgs& a, std::span<double> d_phi, std::span<double> d_psi);
void potential_rhs(Backend b, const PotentialRhsArgs& a, std::span<double> d_phi, std::span<double> d_psi);

} // namespace kernels
} // namespace expball
