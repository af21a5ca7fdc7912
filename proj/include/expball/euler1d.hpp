#pragma once

// Finite-volume solver for the spherically symmetric isentropic Euler system
// on the expanding ball r <= R(t), written on the fixed reference interval
// xi = r / R(t) in [0, 1]. Cells move with the mesh velocity w = xi R'(t).

#include "expball/kernels.hpp"
#include "expball/model.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace expball {

/// Uniform cell-centred grid on [0, 1]; no centre sits at xi = 0.
class Grid
{
public:
    explicit Grid(std::size_t n_cells);

    std::size_t size() const noexcept { return n_; }
    double dxi() const noexcept { return 1.0 / static_cast<double>(n_); }
    double center(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) / static_cast<double>(n_); }
    double face(std::size_t j) const noexcept { return static_cast<double>(j) / static_cast<double>(n_); }
    /// int xi^2 dxi over cell i; the physical volume per steradian is R^3 times this.
    double volume(std::size_t i) const noexcept
    {
        const double a = face(i), b = face(i + 1);
        return (b * b * b - a * a * a) / 3.0;
    }

private:
    std::size_t n_;
};

/// Cell averages of density and radial velocity at time t.
struct FlowState
{
    double t = 0.0;
    std::vector<double> rho;
    std::vector<double> u;

    std::size_t size() const noexcept { return rho.size(); }
};

enum class InitMode { background, potential_bump };

/// polynomial: Phi0(xi) = (1 - xi^2)^6, flat to fifth order at the wall.
/// compact: Phi0(xi) = exp(1 - 1 / (1 - s^2)), s = (xi - center) / width.
enum class BumpShape { polynomial, compact };

/// Perturbed potential data Phi(0) = L r^2 / 2 + eps Phi0, dtPhi(0) = -L^2 r^2 / 2 + eps Phi1,
/// with Phi1 = phi1_scale * Phi0.
struct InitialData
{
    InitMode mode = InitMode::background;
    double epsilon = 0.0;
    BumpShape shape = BumpShape::polynomial;
    double bump_center = 0.5;
    double bump_width = 0.25;
    double phi1_scale = 0.0;

    /// Throws DomainError unless eps >= 0 and a compact bump lies inside (0, 1).
    void validate() const;

    double bump(double xi) const;
    double bump_slope(double xi) const;
    double bump_curvature(double xi) const;
};

struct SolverOptions
{
    Scheme scheme = Scheme::muscl_minmod;
    Backend backend = Backend::openmp;
    double u_max = 100.0;
};

FlowState init(const GasModel& g, const ExpansionProfile& p, const Grid& grid, const InitialData& data);

double cfl_dt(const FlowState& s, const GasModel& g, const ExpansionProfile& p, double cfl,
              Backend backend = Backend::serial);

/// One SSP-RK2 step. Throws SolverDiverged carrying (t, cell) on positivity loss,
/// non-finite values or |u| > u_max.
FlowState step(const FlowState& s, double dt, const GasModel& g, const ExpansionProfile& p,
               const SolverOptions& opt = {});

/// Density and velocity with two ghost cells on each side (index i + 2 is cell i).
/// Centre ghosts: density mirrored, velocity negated. Wall ghosts: density mirrored,
/// velocity reflected about the wall speed, u_ghost = 2 R'(t) - u.
struct ExtendedState
{
    std::vector<double> rho;
    std::vector<double> u;
};

ExtendedState fill_ghosts(const FlowState& s, const ExpansionProfile& p);

struct Primitive
{
    double rho;
    double u;
};

/// Rusanov flux of (rho (u - w), rho u (u - w) + P) across a face moving at w.
kernels::AleFlux numerical_flux(Primitive left, Primitive right, double mesh_velocity, const GasModel& g);

/// Observer cadence: every `every_steps` steps (if nonzero) and whenever log R has
/// advanced by `dlogR` (if nonzero) since the previous call, plus every step while
/// t <= dense_until. The initial and final states are always observed.
struct Cadence
{
    std::size_t every_steps = 0;
    double dlogR = 0.02;
    double dense_until = 0.0;
};

struct RunControl
{
    double t_end = 1.0;
    double cfl = 0.4;
    SolverOptions solver{};
    Cadence cadence{};
};

using FlowObserver = std::function<void(std::size_t step, const FlowState&)>;
/// Called after every step with the step size just taken and the new state.
using StepHook = std::function<void(double dt, const FlowState&)>;

struct RunResult
{
    FlowState final;
    std::size_t steps = 0;
};

RunResult run(const GasModel& g, const ExpansionProfile& p, const Grid& grid, const InitialData& data,
              const RunControl& ctl, const FlowObserver& observer = {}, const StepHook& hook = {});

/// Same loop from an arbitrary starting state.
RunResult run_from(FlowState s, const GasModel& g, const ExpansionProfile& p, const RunControl& ctl,
                   const FlowObserver& observer = {}, const StepHook& hook = {});

/// 4 pi R^3 sum_i rho_i * volume_i.
double total_mass(const FlowState& s, const ExpansionProfile& p);

} // namespace expball
