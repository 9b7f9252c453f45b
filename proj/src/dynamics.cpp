#include "vb/dynamics.hpp"

#include <complex>

#include "vb/errors.hpp"
#include "vb/spectral_ops.hpp"
#include "vb/transform.hpp"

namespace vb {

RhsOperator::RhsOperator(GridPtr grid, const VoigtParams& params)
    : grid_(std::move(grid)), params_(params) {
    params_.validate();
    const auto& g = *grid_;
    mult_alpha_.resize(g.modes());
    mult_beta_.resize(g.modes());
    for (std::size_t p = 0; p < g.modes(); ++p) {
        const double mag = g.wavenumber_magnitude(p);
        mult_alpha_[p] = voigt_inverse_multiplier(mag, params_, params_.alpha);
        mult_beta_[p] = voigt_inverse_multiplier(mag, params_, params_.beta);
    }
}

SpectralField RhsOperator::buoyancy(const SpectralField& theta_hat) const {
    const auto& g = *grid_;
    SpectralField out(grid_);
    for (std::size_t p = 0; p < g.modes(); ++p) {
        if (!g.in_mask(p)) continue;
        const auto [k1, k2] = g.wavenumber(p);
        (void)k2;
        out.coeffs[p] = mult_alpha_[p] *
                        (std::complex<double>(0.0, static_cast<double>(k1)) * theta_hat.coeffs[p]);
    }
    return out;
}

Tendency RhsOperator::operator()(const State& state) const {
    const auto& g = *grid_;
    if (state.omega_hat.grid->size() != g.size())
        throw ConstraintViolation("rhs: state grid does not match operator grid");

    auto [u1_hat, u2_hat] = biot_savart(state.omega_hat);
    const auto u1 = inverse_transform(u1_hat);
    const auto u2 = inverse_transform(u2_hat);

    const SpectralField flux_omega =
        divergence_flux_physical(grid_, u1, u2, inverse_transform(state.omega_hat));
    const SpectralField flux_theta =
        divergence_flux_physical(grid_, u1, u2, inverse_transform(state.theta_hat));

    Tendency out{SpectralField(grid_), SpectralField(grid_)};
    for (std::size_t p = 0; p < g.modes(); ++p) {
        if (!g.in_mask(p)) continue;
        const auto [k1, k2] = g.wavenumber(p);
        (void)k2;
        const std::complex<double> forcing =
            std::complex<double>(0.0, static_cast<double>(k1)) * state.theta_hat.coeffs[p];
        out.d_omega.coeffs[p] = mult_alpha_[p] * (forcing - flux_omega.coeffs[p]);
        out.d_theta.coeffs[p] = -mult_beta_[p] * flux_theta.coeffs[p];
    }

    if (!all_finite(out.d_omega) || !all_finite(out.d_theta))
        throw NumericsError("rhs: non-finite tendency", state.t);
    return out;
}

Tendency rhs(const State& state, const VoigtParams& params) {
    return RhsOperator(state.omega_hat.grid, params)(state);
}

SpectralField buoyancy_term(const SpectralField& theta_hat, const VoigtParams& params) {
    return RhsOperator(theta_hat.grid, params).buoyancy(theta_hat);
}

}  // namespace vb
