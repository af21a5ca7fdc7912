#include <doctest.h>

#include "expball/errors.hpp"
#include "expball/model.hpp"

#include <cmath>
#include <random>

using namespace expball;

TEST_CASE("gas model rejects exponents outside (1, 5/3)")
{
    CHECK_THROWS_AS(GasModel(1.0), DomainError);
    CHECK_THROWS_AS(GasModel(5.0 / 3.0), DomainError);
    CHECK_THROWS_AS(GasModel(1.2, 0.0), DomainError);
    CHECK_NOTHROW(GasModel(1.4));
    CHECK(GasModel(1.2).in_decay_range());
    CHECK_FALSE(GasModel(1.4).in_decay_range());
}

TEST_CASE("closure at unit density")
{
    const GasModel g(1.2);
    CHECK(pressure(g, 1.0) == doctest::Approx(1.0));
    CHECK(sound_speed2(g, 1.0) == doctest::Approx(1.2));
    CHECK(enthalpy(g, 1.0) == doctest::Approx(6.0));
    CHECK(g.B0() == doctest::Approx(6.0));
}

TEST_CASE("enthalpy inverse round trip and vacuum")
{
    const GasModel g(1.3, 2.0);
    for (double rho : {1e-6, 1e-3, 0.5, 1.0, 7.0}) {
        const double h = enthalpy(g, rho);
        CHECK(enthalpy_inv(g, h) == doctest::Approx(rho).epsilon(1e-13));
        // h = c^2 / (gamma - 1)
        CHECK(h == doctest::Approx(sound_speed2(g, rho) / 0.3).epsilon(1e-13));
    }
    CHECK_THROWS_AS(enthalpy_inv(g, 0.0), VacuumReached);
    CHECK_THROWS_AS(enthalpy_inv(g, -1.0), VacuumReached);
}

TEST_CASE("linear wall law")
{
    const ExpansionProfile p{0.25, ProfileKind::linear};
    CHECK(p.radius(0.0) == 1.0);
    CHECK(p.radius(4.0) == doctest::Approx(2.0));
    CHECK(p.rate(3.0) == 0.25);
    CHECK(p.accel(3.0) == 0.0);
    CHECK(p.time_at_radius(3.0) == doctest::Approx(8.0));
    CHECK_THROWS_AS(p.radius(-1.0), DomainError);
}

TEST_CASE("ramped wall law joins the linear law at t = 1")
{
    const ExpansionProfile p{0.2, ProfileKind::ramped};
    // independent: int_0^t s = 20 t^4 - 45 t^5 + 36 t^6 - 10 t^7
    auto S = [](double t) { return 20 * std::pow(t, 4) - 45 * std::pow(t, 5) + 36 * std::pow(t, 6) - 10 * std::pow(t, 7); };
    for (double t : {0.0, 0.1, 0.37, 0.8, 1.0})
        CHECK(p.radius(t) == doctest::Approx(1.0 + 0.2 * S(t)).epsilon(1e-14));
    for (double t : {1.0, 1.5, 10.0})
        CHECK(p.radius(t) == doctest::Approx(1.0 + 0.2 * t).epsilon(1e-14));
    CHECK(p.rate(0.0) == 0.0);
    CHECK(p.accel(0.0) == 0.0);
    CHECK(p.rate(1.0) == doctest::Approx(0.2));
    CHECK(p.accel(1.0) == doctest::Approx(0.0).epsilon(1e-12));
    // rate and accel are the derivatives of radius
    for (double t : {0.2, 0.5, 0.9}) {
        const double h = 1e-5;
        CHECK(p.rate(t) == doctest::Approx((p.radius(t + h) - p.radius(t - h)) / (2 * h)).epsilon(1e-8));
        CHECK(p.accel(t) == doctest::Approx((p.rate(t + h) - p.rate(t - h)) / (2 * h)).epsilon(1e-7));
        CHECK(p.rate(t) >= 0.0);
    }
    CHECK(p.radius(p.time_at_radius(1.1)) == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("background density and velocity")
{
    const GasModel g(1.2);
    const ExpansionProfile p{0.1};
    const auto b0 = background(g, p, 0.0);
    CHECK(b0.rho_hat == 1.0);
    CHECK(b0.u_hat(0.7) == doctest::Approx(0.07));
    const auto b = background(g, p, 10.0);
    CHECK(b.rho_hat == doctest::Approx(0.125));
    CHECK(b.u_hat(2.0) == doctest::Approx(0.1));
}

TEST_CASE("background potential: value, time derivative, Bernoulli")
{
    const GasModel g(1.2);
    const ExpansionProfile p{0.1};
    CHECK(background_potential(g, p, 0.0, 0.6) == doctest::Approx(0.5 * 0.1 * 0.36).epsilon(1e-14));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ut(0.0, 50.0), ur(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double t = ut(rng);
        const double R = p.radius(t);
        const double r = ur(rng) * R;
        const double h = 1e-4 * (1.0 + t);
        const double fd = (background_potential(g, p, t + h, r) - background_potential(g, p, t - h, r)) / (2 * h);
        CHECK(background_potential_dt(g, p, t, r) == doctest::Approx(fd).epsilon(1e-6));
        const double u = 0.1 * r / R;
        const double res = background_potential_dt(g, p, t, r) + 0.5 * u * u + enthalpy(g, std::pow(R, -3.0)) - g.B0();
        CHECK(std::abs(res) <= 1e-12);
    }
    CHECK_THROWS_AS(background_potential(GasModel(4.0 / 3.0), p, 1.0, 0.5), UnsupportedExponent);
    CHECK_THROWS_AS(background_potential(g, ExpansionProfile{0.1, ProfileKind::ramped}, 1.0, 0.5), DomainError);
}

TEST_CASE("density from potential")
{
    const GasModel g(1.2);
    CHECK(density_from_potential(g, 0.0, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(density_from_potential(g, 6.5, 0.0), VacuumReached);
}
