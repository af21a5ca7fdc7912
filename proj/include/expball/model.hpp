#pragma once

// Thermodynamic closure, wall law and the exact expanding background.

namespace expball {

/// Polytropic gas P = A rho^gamma.
class GasModel
{
public:
    /// Accepts 1 < gamma < 5/3 and A > 0; throws DomainError otherwise.
    explicit GasModel(double gamma = 1.2, double A = 1.0);

    double gamma() const noexcept { return gamma_; }
    double A() const noexcept { return A_; }

    /// Bernoulli constant of the unit-density rest state, h(1) = gamma A / (gamma - 1).
    double B0() const noexcept { return gamma_ * A_ / (gamma_ - 1.0); }

    /// True for 1 < gamma < 4/3, the range covered by the decay estimates.
    bool in_decay_range() const noexcept { return gamma_ < 4.0 / 3.0; }

private:
    double gamma_;
    double A_;
};

double pressure(const GasModel& g, double rho);
double sound_speed2(const GasModel& g, double rho);
double enthalpy(const GasModel& g, double rho);

/// Inverse of enthalpy(). Throws VacuumReached for h <= 0.
double enthalpy_inv(const GasModel& g, double h);

enum class ProfileKind { linear, ramped };

/// Wall law R(t) of the expanding ball.
///
/// linear: R = 1 + L t.
/// ramped: R = 1 + L * int_0^t s, with s(tau) = tau^3 (80 - 225 tau + 216 tau^2 - 70 tau^3)
/// on [0, 1] and s = 1 afterwards. s vanishes to second order at 0, reaches 1 with zero
/// first and second derivative at 1, and integrates to 1, so R = 1 + L t for t >= 1.
struct ExpansionProfile
{
    double L = 0.1;
    ProfileKind kind = ProfileKind::linear;

    double radius(double t) const;
    double rate(double t) const;
    double accel(double t) const;

    /// Smallest t with radius(t) = R_target (R_target >= 1, L > 0).
    double time_at_radius(double R_target) const;
};

struct BackgroundSlice
{
    double t = 0.0;
    double rho_hat = 1.0;
    double u_hat_coeff = 0.0; ///< u_hat(r) = u_hat_coeff * r

    double u_hat(double r) const noexcept { return u_hat_coeff * r; }
};

/// rho_hat = R^-3, u_hat = L r / R.
BackgroundSlice background(const GasModel& g, const ExpansionProfile& p, double t);

/// Closed-form background potential for the linear wall law.
/// Throws UnsupportedExponent for gamma = 4/3 and DomainError for a ramped profile.
double background_potential(const GasModel& g, const ExpansionProfile& p, double t, double r);
double background_potential_dt(const GasModel& g, const ExpansionProfile& p, double t, double r);

/// rho = h^-1(B0 - dtPhi - gradPhi2 / 2); VacuumReached if the argument is nonpositive.
double density_from_potential(const GasModel& g, double dtPhi, double gradPhi2);

} // namespace expball
