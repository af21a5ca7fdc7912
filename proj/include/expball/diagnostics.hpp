#pragma once

// Functionals monitored along a run: density ratio band, velocity deviation
// from the background, the weighted first-order energy and its space-time
// integral, the sound-speed floor, and log-log decay fits.

#include "expball/euler1d.hpp"
#include "expball/model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace expball {

struct DiagnosticRecord
{
    double t = 0.0;
    double R = 1.0;
    double mass = 0.0;
    double rho_ratio_min = 1.0; ///< min rho R^3
    double rho_ratio_max = 1.0; ///< max rho R^3
    double dev_u_sup = 0.0;     ///< sup |u - L r / R|
    double dev_grad_sup = 0.0;  ///< sup R |grad(u - L x / R)|
    double dtphi_sup = 0.0;     ///< sup |D_t of the perturbation potential|
    double energy_E = 0.0;
    double cum_spacetime = 0.0;
    double c2_floor_ratio = 1.0; ///< min c^2 R^{3(gamma-1)} / gamma
};

/// Weight exponents for the energy functional. mu = 6 gamma - 9, a(t) = 1 + R^-delta.
struct DecayConfig
{
    double mu = -1.8;
    double delta = 0.12;
    double fit_window = 0.5; ///< fraction of the log R span, counted from the end

    /// mu = 6 gamma - 9 and the largest admissible delta, 3 (gamma - 1) / 5.
    static DecayConfig for_gas(const GasModel& g);
    /// Throws DomainError unless 0 < delta <= 3 (gamma - 1) / 5 and 0 < fit_window <= 1.
    void validate(const GasModel& g) const;
};

/// Snapshot of every functional. Integrals use cell volumes 4 pi R^3 int xi^2 dxi.
/// cum_spacetime = prev_cum + dt_elapsed * (space integrand evaluated on `s`).
DiagnosticRecord record(const FlowState& s, const GasModel& g, const ExpansionProfile& p,
                        const DecayConfig& cfg, double prev_cum, double dt_elapsed);

/// int [R^{mu-1-delta} (D_t dPhi)^2 + R^{mu-1-3(gamma-1)} (d_r dPhi)^2] dS at one instant.
double spacetime_integrand(const FlowState& s, const GasModel& g, const ExpansionProfile& p,
                           const DecayConfig& cfg);

/// Accumulates the space-time integral after each step (right-endpoint rule)
/// and stores a record whenever the run observer fires.
class Recorder
{
public:
    Recorder(GasModel g, ExpansionProfile p, DecayConfig cfg);

    void on_step(double dt, const FlowState& s);
    void on_observe(std::size_t step, const FlowState& s);

    const std::vector<DiagnosticRecord>& series() const noexcept { return series_; }
    double cumulative() const noexcept { return cum_; }

private:
    GasModel gas_;
    ExpansionProfile profile_;
    DecayConfig cfg_;
    double cum_ = 0.0;
    std::vector<DiagnosticRecord> series_;
};

struct SandwichResult
{
    bool pass = false;
    double lower_margin = 0.0; ///< min(rho_ratio_min) - 1/2 over t >= 1
    double upper_margin = 0.0; ///< 3/2 - max(rho_ratio_max) over t >= 1
};

/// 1/2 <= rho R^3 <= 3/2 for every record with t >= 1.
SandwichResult density_sandwich(const std::vector<DiagnosticRecord>& series);

struct ConvergenceResult
{
    bool pass = false;
    double final_value = 0.0;
    double early_max = 0.0;
};

/// dev_u_sup + dev_grad_sup at the last record must be <= 0.1 x its maximum over t in [1, 2].
/// Throws DomainError if the series spans less than a decade in R or has no record in [1, 2].
ConvergenceResult velocity_convergence(const std::vector<DiagnosticRecord>& series, double factor = 0.1);

/// Same property, stated without a pass threshold: after t >= t_from, dev_u_sup
/// never rises above `ripple` times its running minimum.
bool monotone_after(const std::vector<DiagnosticRecord>& series, double t_from, double ripple = 1.05);

enum class Field { dev_u_sup, dev_grad_sup, dtphi_sup, energy_E, rho_ratio_max, c2_floor_ratio };

double field_value(const DiagnosticRecord& r, Field f);
Field field_from_name(const std::string& name);
std::string field_name(Field f);

struct DecayFit
{
    double exponent = 0.0;
    double stderr_ = 0.0;
    std::size_t points = 0;
};

/// Least-squares slope of log(field) against log(R) over the last `fit_window`
/// fraction of the log R span. Needs >= 20 points with positive values.
DecayFit decay_fit(const std::vector<DiagnosticRecord>& series, Field f, const DecayConfig& cfg);

struct VacuumResult
{
    bool pass = false;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

/// c2_floor_ratio within [1/2, 2] at every record.
VacuumResult vacuum_floor(const std::vector<DiagnosticRecord>& series, const GasModel& g);

struct EnergyResult
{
    bool bounded = false;     ///< energy_E <= factor * energy_E(first record) throughout
    bool converged = false;   ///< final d(cum)/d(log R) <= tol * cum
    double max_ratio = 0.0;   ///< max energy_E / energy_E(first record)
    double final_slope_fraction = 0.0;
};

EnergyResult energy_check(const std::vector<DiagnosticRecord>& series, double factor = 10.0, double tol = 0.01);

} // namespace expball
