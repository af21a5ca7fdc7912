#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace expball {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a closure or profile function.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Bernoulli argument became nonpositive: the gas would have to reach vacuum.
class VacuumReached : public Error
{
public:
    VacuumReached(const std::string& what,
                  double t = std::numeric_limits<double>::quiet_NaN(),
                  double r = std::numeric_limits<double>::quiet_NaN())
        : Error(what), t_(t), r_(r)
    {}

    double time() const noexcept { return t_; }
    double radius() const noexcept { return r_; }

private:
    double t_;
    double r_;
};

/// Positivity loss, non-finite values or a runaway velocity in a solver.
class SolverDiverged : public Error
{
public:
    SolverDiverged(const std::string& what, double t, std::size_t cell)
        : Error(what), t_(t), cell_(cell)
    {}

    double time() const noexcept { return t_; }
    std::size_t cell() const noexcept { return cell_; }

private:
    double t_;
    std::size_t cell_;
};

/// The closed-form background potential has a (4 - 3 gamma) denominator.
class UnsupportedExponent : public Error
{
public:
    using Error::Error;
};

class ConfigError : public Error
{
public:
    ConfigError(const std::string& what, int line = 0, std::string key = {})
        : Error(what), line_(line), key_(std::move(key))
    {}

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

} // namespace expball
