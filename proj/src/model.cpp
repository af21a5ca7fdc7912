#include "expball/model.hpp"

#include "expball/errors.hpp"

#include <cmath>
#include <string>

namespace expball {

GasModel::GasModel(double gamma, double A)
    : gamma_(gamma), A_(A)
{
    if (!(gamma > 1.0 && gamma < 5.0 / 3.0))
        throw DomainError("gamma must lie in (1, 5/3), got " + std::to_string(gamma));
    if (!(A > 0.0))
        throw DomainError("pressure constant A must be positive");
}

double pressure(const GasModel& g, double rho)
{
    if (!(rho >= 0.0))
        throw DomainError("pressure: negative density");
    return g.A() * std::pow(rho, g.gamma());
}

double sound_speed2(const GasModel& g, double rho)
{
    if (!(rho > 0.0))
        throw DomainError("sound_speed2: vacuum has no sound speed");
    return g.gamma() * g.A() * std::pow(rho, g.gamma() - 1.0);
}

double enthalpy(const GasModel& g, double rho)
{
    if (!(rho > 0.0))
        throw DomainError("enthalpy: nonpositive density");
    return sound_speed2(g, rho) / (g.gamma() - 1.0);
}

double enthalpy_inv(const GasModel& g, double h)
{
    if (!(h > 0.0))
        throw VacuumReached("enthalpy_inv: nonpositive enthalpy");
    const double gm1 = g.gamma() - 1.0;
    return std::pow(gm1 * h / (g.gamma() * g.A()), 1.0 / gm1);
}

namespace {

// Ramp speed and its antiderivative on [0, 1].
double ramp_speed(double t)
{
    return t * t * t * (80.0 + t * (-225.0 + t * (216.0 - 70.0 * t)));
}

double ramp_speed_dt(double t)
{
    return t * t * (240.0 + t * (-900.0 + t * (1080.0 - 420.0 * t)));
}

double ramp_distance(double t)
{
    return t * t * t * t * (20.0 + t * (-45.0 + t * (36.0 - 10.0 * t)));
}

void check_time(double t)
{
    if (!(t >= 0.0))
        throw DomainError("expansion profile evaluated at negative time");
}

} // namespace

double ExpansionProfile::radius(double t) const
{
    check_time(t);
    if (kind == ProfileKind::linear || t >= 1.0)
        return 1.0 + L * t;
    return 1.0 + L * ramp_distance(t);
}

double ExpansionProfile::rate(double t) const
{
    check_time(t);
    if (kind == ProfileKind::linear || t >= 1.0)
        return L;
    return L * ramp_speed(t);
}

double ExpansionProfile::accel(double t) const
{
    check_time(t);
    if (kind == ProfileKind::linear || t >= 1.0)
        return 0.0;
    return L * ramp_speed_dt(t);
}

double ExpansionProfile::time_at_radius(double R_target) const
{
    if (!(R_target >= 1.0) || !(L > 0.0))
        throw DomainError("time_at_radius needs R >= 1 and L > 0");
    if (kind == ProfileKind::linear || R_target >= 1.0 + L)
        return (R_target - 1.0) / L;
    // ramp is monotone on [0, 1]
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (radius(mid) < R_target ? lo : hi) = mid;
    }
    return hi;
}

BackgroundSlice background(const GasModel&, const ExpansionProfile& p, double t)
{
    const double R = p.radius(t);
    return {t, 1.0 / (R * R * R), p.L / R};
}

namespace {

void require_closed_form(const GasModel& g, const ExpansionProfile& p)
{
    if (p.kind != ProfileKind::linear)
        throw DomainError("background potential is only available for the linear wall law");
    if (std::abs(4.0 - 3.0 * g.gamma()) < 1e-12)
        throw UnsupportedExponent("background potential undefined at gamma = 4/3");
    if (!(p.L > 0.0))
        throw DomainError("background potential needs L > 0");
}

} // namespace

double background_potential(const GasModel& g, const ExpansionProfile& p, double t, double r)
{
    require_closed_form(g, p);
    const double gam = g.gamma();
    const double R = p.radius(t);
    const double C = g.B0() / ((4.0 - 3.0 * gam) * p.L);
    return C + g.B0() * t + p.L * r * r / (2.0 * R) - C * std::pow(R, 4.0 - 3.0 * gam);
}

double background_potential_dt(const GasModel& g, const ExpansionProfile& p, double t, double r)
{
    require_closed_form(g, p);
    const double gam = g.gamma();
    const double R = p.radius(t);
    const double C = g.B0() / ((4.0 - 3.0 * gam) * p.L);
    // term-by-term time derivative of background_potential
    return g.B0() - p.L * p.L * r * r / (2.0 * R * R)
        - C * (4.0 - 3.0 * gam) * p.L * std::pow(R, 3.0 - 3.0 * gam);
}

double density_from_potential(const GasModel& g, double dtPhi, double gradPhi2)
{
    const double h = g.B0() - dtPhi - 0.5 * gradPhi2;
    if (!(h > 0.0))
        throw VacuumReached("Bernoulli argument is nonpositive");
    return enthalpy_inv(g, h);
}

} // namespace expball
