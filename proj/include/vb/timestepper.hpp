#pragma once

#include <functional>

#include "vb/dynamics.hpp"

namespace vb {

/// Time-stepping policy.  Exactly one of the two modes is active: fixed dt
/// (reproducible schedules, convergence studies) or an advective CFL bound
/// recomputed every step and clamped by dt_max.
struct StepControl {
    enum class Mode { fixed_dt, cfl };

    Mode mode = Mode::fixed_dt;
    double dt = 1e-3;      // fixed mode
    double cfl = 0.4;      // cfl mode; must stay <= 0.5
    double dt_max = 1e-2;  // cfl mode clamp (the zero-velocity floor would otherwise blow up)
    double t_end = 1.0;
    long max_steps = 1'000'000;

    // Observer cadence: fire every n steps, or whenever t crosses a multiple
    // of every_dt (set exactly one; every_dt = 0 means step cadence).
    int observe_every_steps = 10;
    double observe_every_dt = 0.0;

    void validate() const;
};

/// Classical RK4 update of both fields; advances t by dt.  The system is
/// autonomous, so stages reuse the state time.
State rk4_step(const State& state, double dt, const RhsOperator& op);
State rk4_step(const State& state, double dt, const VoigtParams& params);

/// Advective step bound: cfl * dx / max(|u|_inf, 1e-8), where |u|_inf is the
/// grid maximum of the pointwise speed sqrt(u1^2 + u2^2).  The floor keeps
/// the bound finite at rest; callers clamp with dt_max.
double stable_dt(const State& state, double cfl_number);

using Observer = std::function<void(const State&)>;
using StepHook = std::function<void(const State&, long step)>;

/// Integrates to t_end.  The observer fires on the initial state and on the
/// final state regardless of cadence; the final step is truncated so the
/// returned state lands on t_end exactly.  step_hook (optional) fires after
/// every accepted step.  Throws NumericsError on non-finite values or when
/// max_steps is exhausted, reporting the last good time.
State integrate(State state, const StepControl& control, const VoigtParams& params,
                const Observer& observer = {}, const StepHook& step_hook = {});

}  // namespace vb
