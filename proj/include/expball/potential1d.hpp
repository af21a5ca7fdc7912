#pragma once

// Method-of-lines solver for the spherically symmetric quasilinear potential
// equation on the expanding ball, used as an independent oracle for the
// finite-volume Euler solver on smooth irrotational flow.
//
// Unknowns live on the nodes xi_j = j / N, j = 0..N, of the reference interval:
// phi_j = Phi(t, xi_j R) and psi_j = dPhi/dt (Eulerian, at fixed r). The centre
// node uses the regularised limit (2/r) Phi_r -> 2 Phi_rr. The wall carries the
// Neumann condition Phi_r = R'(t) through a mirror ghost node.

#include "expball/euler1d.hpp"
#include "expball/kernels.hpp"
#include "expball/model.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace expball {

struct PotentialState
{
    double t = 0.0;
    std::vector<double> phi;
    std::vector<double> psi;

    std::size_t nodes() const noexcept { return phi.size(); }
    std::size_t intervals() const noexcept { return phi.size() - 1; }
};

/// Node values at t = 0 (grid.size() intervals, grid.size() + 1 nodes).
PotentialState init_potential(const GasModel& g, const ExpansionProfile& p, const Grid& grid,
                              const InitialData& data);

/// phi and psi with one ghost node per side (index j + 1 is node j).
struct PotentialGhosts
{
    std::vector<double> phi;
    std::vector<double> psi;
};

/// Even reflection at the centre. At the wall the ghost enforces the centred
/// Neumann condition Phi_r = R' and its time derivative Phi_tr = R'' - R' Phi_rr.
PotentialGhosts fill_potential_ghosts(const PotentialState& s, const ExpansionProfile& p);

/// dt = cfl * dxi * R / max_j (|Phi_r - w| + c).
double potential_cfl_dt(const PotentialState& s, const GasModel& g, const ExpansionProfile& p, double cfl);

/// One classical RK4 step.
PotentialState step_potential(const PotentialState& s, double dt, const GasModel& g, const ExpansionProfile& p,
                              Backend backend = Backend::serial);

/// Flow at the nodes: u = Phi_r by centred differences (ghosts at the ends), rho from Bernoulli.
struct NodeFlow
{
    double t = 0.0;
    std::vector<double> xi;
    std::vector<double> rho;
    std::vector<double> u;
};

NodeFlow to_flow(const PotentialState& s, const GasModel& g, const ExpansionProfile& p);

/// Flow on the matching cell-centred grid: u from the difference quotient across
/// each cell, psi interpolated to the centre with the 4-point cubic rule.
/// Exact for the quadratic background; used for diagnostics and cross-solver checks.
FlowState to_cell_flow(const PotentialState& s, const GasModel& g, const ExpansionProfile& p);

/// D_t of the perturbation potential, D_t = d/dt + (L r / R) d/dr, in closed form
/// h(rho_hat) - h(rho) - (u - u_hat)^2 / 2 at the nodes.
std::vector<double> material_derivative_field(const PotentialState& s, const GasModel& g,
                                              const ExpansionProfile& p);

/// Same quantity by direct differencing of Phi - Phi_hat: (psi - psi_hat) + u_hat (Phi_r - Phi_hat_r).
/// Requires the linear wall law.
std::vector<double> material_derivative_direct(const PotentialState& s, const GasModel& g,
                                               const ExpansionProfile& p);

/// max_j |phi_j - Phi_hat(t, xi_j R)|. Requires the linear wall law.
double background_node_error(const PotentialState& s, const GasModel& g, const ExpansionProfile& p);

/// One-sided second-order wall derivative minus R'(t).
double wall_neumann_residual(const PotentialState& s, const ExpansionProfile& p);

using PotentialObserver = std::function<void(std::size_t step, const PotentialState&)>;

struct PotentialRunControl
{
    double t_end = 1.0;
    double cfl = 0.4;
    Backend backend = Backend::serial;
    Cadence cadence{};
};

struct PotentialRunResult
{
    PotentialState final;
    std::size_t steps = 0;
};

PotentialRunResult run_potential(const GasModel& g, const ExpansionProfile& p, const Grid& grid,
                                 const InitialData& data, const PotentialRunControl& ctl,
                                 const PotentialObserver& observer = {},
                                 const std::function<void(double, const PotentialState&)>& hook = {});

/// Perturbation potential about the exact background, evolved with the operator
/// linearised about that background (linear wall law only). The wall condition
/// is homogeneous Neumann.
struct LinearizedState
{
    double t = 0.0;
    std::vector<double> phi; ///< Phi - Phi_hat at the nodes
    std::vector<double> psi; ///< its Eulerian time derivative
};

LinearizedState init_linearized(const Grid& grid, const InitialData& data);
LinearizedState step_linearized(const LinearizedState& s, double dt, const GasModel& g, const ExpansionProfile& p);

} // namespace expball
