#include <doctest.h>

#include "expball/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace expball;

TEST_CASE("minmod")
{
    CHECK(kernels::minmod(1.0, 2.0) == 1.0);
    CHECK(kernels::minmod(-3.0, -2.0) == -2.0);
    CHECK(kernels::minmod(1.0, -1.0) == 0.0);
    CHECK(kernels::minmod(0.0, 5.0) == 0.0);
    CHECK(kernels::minmod(2.0, 3.0) == kernels::minmod(3.0, 2.0));
}

TEST_CASE("Rusanov flux is consistent with the physical flux")
{
    const GasModel g(1.2);
    for (double w : {0.0, 0.05, 0.3}) {
        const double rho = 0.8, v = 0.2;
        const auto f = kernels::ale_rusanov(g, rho, v, rho, v, w);
        CHECK(f.mass == doctest::Approx(rho * v));
        CHECK(f.momentum == doctest::Approx(rho * (v + w) * v + std::pow(rho, 1.2)));
    }
    // zero relative velocity and equal states: pure pressure
    const auto f0 = kernels::ale_rusanov(g, 1.0, 0.0, 1.0, 0.0, 0.4);
    CHECK(f0.mass == 0.0);
    CHECK(f0.momentum == doctest::Approx(1.0));
}

namespace {

struct Fields
{
    std::vector<double> rho, v;
};

Fields random_fields(std::size_t n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(0.5, 1.5), dv(-0.2, 0.2);
    Fields f{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        f.rho[i] = d(rng);
        f.v[i] = dv(rng);
    }
    return f;
}

} // namespace

TEST_CASE("serial and OpenMP Euler residuals agree bit for bit")
{
    const GasModel g(1.2);
    for (Scheme sc : {Scheme::first_order, Scheme::muscl_minmod}) {
        const std::size_t n = 333;
        const Fields f = random_fields(n, 11);
        kernels::EulerResidualArgs a{&g, sc, 1.7, 0.1, f.rho, f.v};
        kernels::EulerWorkspace w1, w2;
        std::vector<double> m1(n), p1(n), m2(n), p2(n);
        kernels::euler_residual_serial(a, w1, m1, p1);
        kernels::euler_residual_omp(a, w2, m2, p2);
        CHECK(m1 == m2);
        CHECK(p1 == p2);
        CHECK(kernels::max_signal_speed(Backend::serial, g, f.rho, f.v)
              == kernels::max_signal_speed(Backend::openmp, g, f.rho, f.v));
    }
}

TEST_CASE("uniform state at rest in the moving frame has zero residual")
{
    const GasModel g(1.4);
    const std::size_t n = 50;
    std::vector<double> rho(n, 0.3), v(n, 0.0), dm(n), dp(n);
    for (Scheme sc : {Scheme::first_order, Scheme::muscl_minmod}) {
        kernels::EulerResidualArgs a{&g, sc, 2.0, 0.1, rho, v};
        kernels::EulerWorkspace ws;
        kernels::euler_residual_serial(a, ws, dm, dp);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(dm[i]) <= 1e-14);
            CHECK(std::abs(dp[i]) <= 1e-12);
        }
    }
}

TEST_CASE("mass residual telescopes: total mass rate is zero")
{
    const GasModel g(1.2);
    const std::size_t n = 120;
    const Fields f = random_fields(n, 3);
    std::vector<double> dm(n), dp(n);
    kernels::EulerResidualArgs a{&g, Scheme::muscl_minmod, 1.3, 0.1, f.rho, f.v};
    kernels::EulerWorkspace ws;
    kernels::euler_residual_serial(a, ws, dm, dp);
    double total = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a0 = static_cast<double>(i) / n, b0 = static_cast<double>(i + 1) / n;
        const double vol = (b0 * b0 * b0 - a0 * a0 * a0) / 3.0;
        total += dm[i] * vol;
        scale += std::abs(dm[i]) * vol;
    }
    CHECK(std::abs(total) <= 1e-13 * scale);
}

TEST_CASE("serial and OpenMP potential right-hand sides agree bit for bit")
{
    const GasModel g(1.2);
    const std::size_t nodes = 101;
    std::vector<double> phi(nodes + 2), psi(nodes + 2);
    for (std::size_t j = 0; j < nodes + 2; ++j) {
        const double xi = (static_cast<double>(j) - 1.0) / (nodes - 1);
        phi[j] = 0.05 * xi * xi + 0.01 * std::cos(3 * xi);
        psi[j] = -0.005 * xi * xi + 0.002 * std::sin(2 * xi);
    }
    kernels::PotentialRhsArgs a{&g, 0.5, 1.05, 0.1, phi, psi};
    std::vector<double> d1(nodes), e1(nodes), d2(nodes), e2(nodes);
    kernels::potential_rhs_serial(a, d1, e1);
    kernels::potential_rhs_omp(a, d2, e2);
    CHECK(d1 == d2);
    CHECK(e1 == e2);
}
