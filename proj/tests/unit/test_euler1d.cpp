#include <doctest.h>

#include "expball/errors.hpp"
#include "expball/euler1d.hpp"

#include <algorithm>
#include <cmath>

using namespace expball;

TEST_CASE("grid geometry")
{
    CHECK_THROWS_AS(Grid(4), DomainError);
    const Grid g(10);
    CHECK(g.center(0) == doctest::Approx(0.05));
    CHECK(g.face(10) == 1.0);
    double v = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        v += g.volume(i);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("initial data")
{
    const GasModel g(1.2);
    const ExpansionProfile p{0.1};
    const Grid grid(200);

    SUBCASE("background")
    {
        const FlowState s = init(g, p, grid, InitialData{});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(s.rho[i] == 1.0);
            CHECK(s.u[i] == doctest::Approx(0.1 * grid.center(i)));
        }
    }
    SUBCASE("zero amplitude bump equals background")
    {
        InitialData d;
        d.mode = InitMode::potential_bump;
        const FlowState a = init(g, p, grid, d);
        const FlowState b = init(g, p, grid, InitialData{});
        CHECK(a.u == b.u);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(a.rho[i] == doctest::Approx(b.rho[i]).epsilon(1e-15));
    }
    SUBCASE("small bump perturbs density by less than 10%")
    {
        InitialData d;
        d.mode = InitMode::potential_bump;
        d.epsilon = 0.01;
        const FlowState s = init(g, p, grid, d);
        double dev = 0.0;
        for (double r : s.rho)
            dev = std::max(dev, std::abs(r - 1.0));
        // oracle: Bernoulli with grad Phi = L r + eps Phi0', dtPhi = -L^2 r^2 / 2
        double expect = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double x = grid.center(i);
            const double slope = -12.0 * x * std::pow(1.0 - x * x, 5);
            const double gu = 0.1 * x + 0.01 * slope;
            const double h = 6.0 + 0.005 * x * x - 0.5 * gu * gu;
            expect = std::max(expect, std::abs(std::pow(h / 6.0, 5.0) - 1.0));
        }
        CHECK(dev > 0.0);
        CHECK(dev < 0.1);
        CHECK(dev == doctest::Approx(expect).epsilon(1e-10));
    }
    SUBCASE("compact bump must stay inside the ball")
    {
        InitialData d;
        d.mode = InitMode::potential_bump;
        d.shape = BumpShape::compact;
        d.bump_center = 0.9;
        CHECK_THROWS_AS(d.validate(), DomainError);
    }
}

TEST_CASE("bump derivatives match finite differences")
{
    for (BumpShape sh : {BumpShape::polynomial, BumpShape::compact}) {
        InitialData d;
        d.shape = sh;
        for (double x : {0.1, 0.3, 0.45, 0.6, 0.7}) {
            const double h = 1e-5;
            CHECK(d.bump_slope(x) == doctest::Approx((d.bump(x + h) - d.bump(x - h)) / (2 * h)).epsilon(1e-6));
            CHECK(d.bump_curvature(x)
                  == doctest::Approx((d.bump_slope(x + h) - d.bump_slope(x - h)) / (2 * h)).epsilon(1e-6));
        }
    }
}

TEST_CASE("ghost cells")
{
    const ExpansionProfile p{0.1};
    FlowState s;
    s.t = 2.0;
    s.rho = {1, 2, 3, 4, 5, 6, 7, 8};
    s.u = {.1, .2, .3, .4, .5, .6, .7, .8};
    const ExtendedState e = fill_ghosts(s, p);
    REQUIRE(e.rho.size() == 12);
    CHECK(e.rho[1] == 1);
    CHECK(e.rho[0] == 2);
    CHECK(e.u[1] == -0.1);
    CHECK(e.rho[10] == 8);
    CHECK(e.rho[11] == 7);
    CHECK(e.u[10] == doctest::Approx(0.2 - 0.8));
}

TEST_CASE("background is preserved to roundoff by both schemes")
{
    const GasModel g(1.2);
    const ExpansionProfile p{0.1};
    for (Scheme sc : {Scheme::first_order, Scheme::muscl_minmod}) {
        RunControl ctl;
        ctl.t_end = 20.0;
        ctl.solver.scheme = sc;
        double worst = 0.0;
        run(g, p, Grid(64), InitialData{}, ctl, [&](std::size_t, const FlowState& s) {
            const double R3 = std::pow(p.radius(s.t), 3);
            for (double r : s.rho)
                worst = std::max(worst, std::abs(r * R3 - 1.0));
        });
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("mass is conserved and backends agree")
{
    const GasModel g(1.2);
    const ExpansionProfile p{0.1};
    InitialData d;
    d.mode = InitMode::potential_bump;
    d.epsilon = 0.02;
    RunControl ctl;
    ctl.t_end = 3.0;
    ctl.solver.backend = Backend::serial;
    const Grid grid(100);
    const RunResult a = run(g, p, grid, d, ctl);
    ctl.solver.backend = Backend::openmp;
    const RunResult b = run(g, p, grid, d, ctl);
    CHECK(a.final.rho == b.final.rho);
    CHECK(a.final.u == b.final.u);
    const double m0 = total_mass(init(g, p, grid, d), p);
    CHECK(std::abs(total_mass(a.final, p) - m0) <= 1e-13 * m0);
}

TEST_CASE("run lands on t_end and observes the final state")
{
    const GasModel g(1.2);
    const ExpansionProfile p{0.1};
    RunControl ctl;
    ctl.t_end = 1.2345;
    ctl.cadence.dlogR = 0.0;
    std::vector<double> ts;
    const RunResult r = run(g, p, Grid(32), InitialData{}, ctl, [&](std::size_t, const FlowState& s) { ts.push_back(s.t); });
    CHECK(r.final.t == 1.2345);
    REQUIRE(ts.size() == 2);
    CHECK(ts.front() == 0.0);
    CHECK(ts.back() == 1.2345);
}

TEST_CASE("divergence is reported with time and cell")
{
    const GasModel g(1.2);
    const ExpansionProfile p{0.1};
    FlowState s = init(g, p, Grid(16), InitialData{});
    s.rho[5] = -1.0;
    SolverOptions opt;
    try {
        step(s, 1e-3, g, p, opt);
        FAIL("expected SolverDiverged");
    } catch (const SolverDiverged& e) {
        CHECK(e.cell() == 5);
    }
}
