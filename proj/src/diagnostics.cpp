#include "vb/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "vb/errors.hpp"
#include "vb/spectral_ops.hpp"
#include "vb/transform.hpp"

namespace vb {

SobolevNorm sobolev_norm(const SpectralField& f, double s) {
    const auto& g = *f.grid;
    double hom = 0.0, inhom = 0.0;
    for (std::size_t p = 0; p < g.modes(); ++p) {
        const double a2 = std::norm(f.coeffs[p]);
        const double mag = g.wavenumber_magnitude(p);
        inhom += std::pow(1.0 + mag, 2.0 * s) * a2;
        if (mag == 0.0) {
            // |k|^(2s) at k = 0: 1 for s = 0 (plain L2), 0 for s > 0, and the
            // sum skips the mean for s < 0 where the weight diverges.
            if (s == 0.0) hom += a2;
        } else {
            hom += std::pow(mag, 2.0 * s) * a2;
        }
    }
    return {std::sqrt(hom), std::sqrt(inhom)};
}

namespace {

double weighted_energy(const SpectralField& f, double epsilon, double exponent) {
    const auto& g = *f.grid;
    double s = 0.0;
    for (std::size_t p = 0; p < g.modes(); ++p)
        s += std::pow(1.0 + epsilon * g.wavenumber_magnitude(p), exponent) * std::norm(f.coeffs[p]);
    return s;
}

}  // namespace

double voigt_theta_energy(const SpectralField& theta_hat, const VoigtParams& params) {
    const auto& g = *theta_hat.grid;
    double s = 0.0;
    for (std::size_t p = 0; p < g.modes(); ++p)
        s += (1.0 + params.epsilon * g.wavenumber_magnitude(p)) * std::norm(theta_hat.coeffs[p]);
    return s;
}

double voigt_omega_energy(const SpectralField& omega_hat, const VoigtParams& params) {
    const auto& g = *omega_hat.grid;
    double s = 0.0;
    for (std::size_t p = 0; p < g.modes(); ++p)
        s += (1.0 + params.epsilon * g.wavenumber_magnitude(p)) * std::norm(omega_hat.coeffs[p]);
    return s;
}

std::pair<double, double> fractional_invariants(const State& state, const VoigtParams& params) {
    return {weighted_energy(state.theta_hat, params.epsilon, params.beta),
            weighted_energy(state.omega_hat, params.epsilon, params.alpha)};
}

double lp_norm(const SpectralField& f, double p) {
    if (!(p >= 1.0)) throw ConstraintViolation("lp_norm: p must be >= 1");
    const auto samples = inverse_transform(f);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : samples) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (double v : samples) acc += std::pow(std::abs(v), p);
    return std::pow(acc / static_cast<double>(samples.size()), 1.0 / p);
}

double bkm_accumulate(double previous, const DiagnosticsRecord& prev_record,
                      const DiagnosticsRecord& next_record) {
    const double dt = next_record.t - prev_record.t;
    if (dt < 0.0) throw ConstraintViolation("bkm_accumulate: records must advance in time");
    const double g_prev = prev_record.max_omega + prev_record.max_theta;
    const double g_next = next_record.max_omega + next_record.max_theta;
    return previous + 0.5 * dt * (g_prev + g_next);
}

DiagnosticsEngine::DiagnosticsEngine(const State& initial, const VoigtParams& params,
                                     std::vector<double> sobolev_s)
    : params_(params), sobolev_s_(std::move(sobolev_s)) {
    a0_ = voigt_theta_energy(initial.theta_hat, params_);
    omega0_h_half_ = std::sqrt(voigt_omega_energy(initial.omega_hat, params_));
}

DiagnosticsRecord DiagnosticsEngine::observe(const State& state) {
    if (have_prev_ && !(state.t > prev_.t))
        throw ConstraintViolation("diagnostics: records must arrive in increasing t");

    DiagnosticsRecord r;
    r.t = state.t;
    r.l2_omega = l2_norm(state.omega_hat);
    r.l2_theta = l2_norm(state.theta_hat);
    r.h_half_omega = sobolev_norm(state.omega_hat, 0.5).homogeneous;
    r.h_half_theta = sobolev_norm(state.theta_hat, 0.5).homogeneous;
    r.q_theta = voigt_theta_energy(state.theta_hat, params_);
    r.q_omega = voigt_omega_energy(state.omega_hat, params_);
    std::tie(r.frac_q_theta, r.frac_q_omega) = fractional_invariants(state, params_);

    const auto omega = inverse_transform(state.omega_hat);
    const auto theta = inverse_transform(state.theta_hat);
    for (double v : omega) r.max_omega = std::max(r.max_omega, std::abs(v));
    for (double v : theta) r.max_theta = std::max(r.max_theta, std::abs(v));

    auto [u1_hat, u2_hat] = biot_savart(state.omega_hat);
    const auto u1 = inverse_transform(u1_hat);
    const auto u2 = inverse_transform(u2_hat);
    for (std::size_t p = 0; p < u1.size(); ++p)
        r.max_u = std::max(r.max_u, std::sqrt(u1[p] * u1[p] + u2[p] * u2[p]));

    for (double s : sobolev_s_) {
        r.hs_omega.push_back(sobolev_norm(state.omega_hat, s).inhomogeneous);
        r.hs_theta.push_back(sobolev_norm(state.theta_hat, s).inhomogeneous);
    }

    r.bkm_integral = have_prev_ ? bkm_accumulate(prev_.bkm_integral, prev_, r) : 0.0;
    r.bound_slack = std::sqrt(r.q_omega) - omega0_h_half_ - r.t * std::sqrt(a0_);

    prev_ = r;
    have_prev_ = true;
    return r;
}

std::vector<GrowthBoundPoint> check_growth_bound(std::span<const DiagnosticsRecord> series,
                                                 double a0, double omega0_h_half,
                                                 const VoigtParams& params) {
    if (params.epsilon != 1.0 || params.alpha != 1.0 || params.beta != 1.0)
        throw ConstraintViolation(
            "check_growth_bound: the linear bound is established only for the classical system "
            "at epsilon = 1");
    if (!(a0 >= 0.0) || !(omega0_h_half >= 0.0))
        throw ConstraintViolation("check_growth_bound: negative initial energies");

    const double slack = 1e-6 * (1.0 + omega0_h_half);
    std::vector<GrowthBoundPoint> out;
    out.reserve(series.size());
    for (const auto& r : series) {
        GrowthBoundPoint pt;
        pt.t = r.t;
        pt.residual = std::sqrt(r.q_omega) - omega0_h_half - r.t * std::sqrt(a0);
        pt.slack = slack;
        pt.within = pt.residual <= slack;
        out.push_back(pt);
    }
    return out;
}

}  // namespace vb
