#pragma once

#include "expball/errors.hpp"
#include "expball/euler1d.hpp"
#include "expball/model.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace expball::detail {

/// Shared adaptive time loop. Lands exactly on t_end and calls `observe`
/// according to `cad` (see Cadence). Returns the number of steps taken.
template <class State, class DtFn, class StepFn, class Observe, class Hook>
std::size_t march(State& s, const ExpansionProfile& p, double t_end, const Cadence& cad,
                  DtFn&& dt_fn, StepFn&& step_fn, Observe&& observe, Hook&& hook)
{
    constexpr std::size_t max_steps = 100'000'000;
    std::size_t steps = 0;
    observe(steps, s);
    double next_mark = cad.dlogR > 0.0
        ? (std::floor(std::log(p.radius(s.t)) / cad.dlogR) + 1.0) * cad.dlogR
        : 0.0;

    while (s.t < t_end) {
        double dt = dt_fn(s);
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw SolverDiverged("time step collapsed to " + std::to_string(dt), s.t, 0);
        bool last = false;
        if (s.t + dt >= t_end * (1.0 - 1e-14)) {
            dt = t_end - s.t;
            last = true;
        }
        s = step_fn(s, dt);
        if (last)
            s.t = t_end;
        ++steps;
        hook(dt, s);

        bool due = last;
        if (cad.every_steps > 0 && steps % cad.every_steps == 0)
            due = true;
        if (s.t <= cad.dense_until)
            due = true;
        if (cad.dlogR > 0.0) {
            const double logR = std::log(p.radius(s.t));
            if (logR >= next_mark) {
                due = true;
                next_mark = (std::floor(logR / cad.dlogR) + 1.0) * cad.dlogR;
            }
        }
        if (due)
            observe(steps, s);
        if (steps >= max_steps)
            throw SolverDiverged("step limit exceeded", s.t, 0);
    }
    return steps;
}

} // namespace expball::detail
