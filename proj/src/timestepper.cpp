#include "vb/timestepper.hpp"

#include <cmath>

#include "vb/errors.hpp"
#include "vb/spectral_ops.hpp"
#include "vb/transform.hpp"

namespace vb {

void StepControl::validate() const {
    if (mode == Mode::fixed_dt) {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("control: fixed mode needs dt > 0");
    } else {
        if (!(cfl > 0.0) || cfl > 0.5) throw ConfigError("control: cfl must lie in (0, 0.5]");
        if (!(dt_max > 0.0)) throw ConfigError("control: dt_max must be positive");
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("control: t_end must be >= 0");
    if (max_steps < 1) throw ConfigError("control: max_steps must be >= 1");
    if (observe_every_dt < 0.0) throw ConfigError("control: every_dt must be >= 0");
    if (observe_every_dt == 0.0 && observe_every_steps < 1)
        throw ConfigError("control: every_steps must be >= 1");
}

namespace {

// dst = base + factor * k, over both fields.
State stage(const State& base, const Tendency& k, double factor) {
    State s;
    s.t = base.t;
    s.omega_hat = base.omega_hat;
    s.theta_hat = base.theta_hat;
    const std::size_t m = base.omega_hat.coeffs.size();
    for (std::size_t p = 0; p < m; ++p) {
        s.omega_hat.coeffs[p] += factor * k.d_omega.coeffs[p];
        s.theta_hat.coeffs[p] += factor * k.d_theta.coeffs[p];
    }
    return s;
}

}  // namespace

State rk4_step(const State& state, double dt, const RhsOperator& op) {
    const Tendency k1 = op(state);
    const Tendency k2 = op(stage(state, k1, 0.5 * dt));
    const Tendency k3 = op(stage(state, k2, 0.5 * dt));
    const Tendency k4 = op(stage(state, k3, dt));

    State next;
    next.omega_hat = state.omega_hat;
    next.theta_hat = state.theta_hat;
    const double w = dt / 6.0;
    const std::size_t m = state.omega_hat.coeffs.size();
    for (std::size_t p = 0; p < m; ++p) {
        next.omega_hat.coeffs[p] +=
            w * (k1.d_omega.coeffs[p] + 2.0 * k2.d_omega.coeffs[p] + 2.0 * k3.d_omega.coeffs[p] +
                 k4.d_omega.coeffs[p]);
        next.theta_hat.coeffs[p] +=
            w * (k1.d_theta.coeffs[p] + 2.0 * k2.d_theta.coeffs[p] + 2.0 * k3.d_theta.coeffs[p] +
                 k4.d_theta.coeffs[p]);
    }
    next.t = state.t + dt;

    if (!all_finite(next.omega_hat) || !all_finite(next.theta_hat))
        throw NumericsError("rk4_step: non-finite state", state.t);
    return next;
}

State rk4_step(const State& state, double dt, const VoigtParams& params) {
    return rk4_step(state, dt, RhsOperator(state.omega_hat.grid, params));
}

double stable_dt(const State& state, double cfl_number) {
    if (!(cfl_number > 0.0) || cfl_number > 0.5)
        throw ConfigError("stable_dt: cfl must lie in (0, 0.5]");
    auto [u1_hat, u2_hat] = biot_savart(state.omega_hat);
    const auto u1 = inverse_transform(u1_hat);
    const auto u2 = inverse_transform(u2_hat);
    double umax = 0.0;
    for (std::size_t p = 0; p < u1.size(); ++p)
        umax = std::max(umax, std::sqrt(u1[p] * u1[p] + u2[p] * u2[p]));
    return cfl_number * state.omega_hat.grid->dx() / std::max(umax, 1e-8);
}

State integrate(State state, const StepControl& control, const VoigtParams& params,
                const Observer& observer, const StepHook& step_hook) {
    control.validate();
    params.validate();

    RhsOperator op(state.omega_hat.grid, params);
    if (observer) observer(state);

    long steps = 0;
    const double t0 = state.t;
    long next_dt_mark = 1;  // multiples of every_dt past t0 already reported

    while (state.t < control.t_end) {
        if (steps >= control.max_steps)
            throw NumericsError("integrate: max_steps exhausted", state.t);

        double dt = (control.mode == StepControl::Mode::fixed_dt)
                        ? control.dt
                        : std::min(stable_dt(state, control.cfl), control.dt_max);
        const bool final_step = (control.t_end - state.t) <= dt;
        if (final_step) dt = control.t_end - state.t;

        state = rk4_step(state, dt, op);
        if (final_step) state.t = control.t_end;  // land exactly
        ++steps;
        if (step_hook) step_hook(state, steps);

        bool due = final_step;
        if (!due) {
            if (control.observe_every_dt > 0.0) {
                if (state.t >= t0 + next_dt_mark * control.observe_every_dt) {
                    due = true;
                    while (state.t >= t0 + next_dt_mark * control.observe_every_dt) ++next_dt_mark;
                }
            } else {
                due = (steps % control.observe_every_steps == 0);
            }
        }
        if (due && observer) observer(state);
    }
    return state;
}

}  // namespace vb
