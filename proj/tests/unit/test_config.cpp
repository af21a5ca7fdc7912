#include <doctest.h>

#include "expball/config.hpp"
#include "expball/errors.hpp"

using namespace expball;

TEST_CASE("empty file gives the defaults")
{
    const ExperimentConfig c = parse_config("");
    CHECK(c.gamma == 1.2);
    CHECK(c.L == 0.1);
    CHECK(c.epsilon == 0.01);
    CHECK(c.decay().delta == doctest::Approx(0.12));
    CHECK(c.n_cells == 200);
    CHECK(c.cfl == 0.4);
    CHECK(c.R_end == 10.0);
    CHECK(c.scheme == Scheme::muscl_minmod);
    CHECK(c.solver == SolverChoice::euler);
    CHECK(c.end_time() == doctest::Approx(90.0));
}

TEST_CASE("values, comments and lists")
{
    const ExperimentConfig c = parse_config(
        "# header\n"
        "gamma = 1.25   # inline\n"
        "\n"
        "scheme = first_order\n"
        "solver = both\n"
        "checks = mass, cross\n"
        "grids = 50,100,200\n"
        "t_end = 3\n"
        "bump_shape = compact\n");
    CHECK(c.gamma == 1.25);
    CHECK(c.scheme == Scheme::first_order);
    CHECK(c.solver == SolverChoice::both);
    CHECK(c.checks == std::vector<std::string>{"mass", "cross"});
    CHECK(c.grids == std::vector<std::size_t>{50, 100, 200});
    CHECK(c.end_time() == 3.0);
    CHECK(c.initial_data().shape == BumpShape::compact);
}

TEST_CASE("errors carry line numbers or keys")
{
    auto line_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.line();
        }
        return -1;
    };
    auto key_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("none");
    };
    CHECK(line_of("gamma = 1.2\nfoo = 1\n") == 2);
    CHECK(line_of("gamma = 1.2\ngamma = 1.3\n") == 2);
    CHECK(line_of("\n\njust words\n") == 3);
    CHECK(line_of("n_cells = abc\n") == 1);
    CHECK(key_of("gamma = 1.7\n") == "gamma");
    CHECK(key_of("L = 0\n") == "L");
    CHECK(key_of("epsilon = -1\n") == "epsilon");
    CHECK(key_of("n_cells = 4\n") == "n_cells");
    CHECK(key_of("cfl = 1.5\n") == "cfl");
    CHECK(key_of("delta = 0.5\n") == "delta");
    CHECK(key_of("checks = cross\n") == "checks");
}

TEST_CASE("every documented key parses")
{
    for (const auto& [key, help] : config_keys()) {
        CHECK_FALSE(help.empty());
        (void)key;
    }
    CHECK(config_keys().size() >= 20);
}
