#pragma once

#include <vector>

#include "vb/field.hpp"
#include "vb/voigt.hpp"

namespace vb {

/// Prognostic variables in spectral form.  Invariants: both fields dealiased
/// and Hermitian, omega mean-free (omegahat_0 exactly zero).
struct State {
    SpectralField omega_hat;
    SpectralField theta_hat;
    double t = 0.0;
};

struct Tendency {
    SpectralField d_omega;
    SpectralField d_theta;
};

/// Right-hand side of the regularized system in divergence form:
///   d omega/dt = (1+eps|k|)^(-alpha) [ -div(u omega) + d_x1 theta ]
///   d theta/dt = -(1+eps|k|)^(-beta)  div(u theta)
/// with u recovered from omega.  Holds the multiplier tables so repeated
/// evaluations (four per RK4 step) skip the pow calls.
class RhsOperator {
public:
    RhsOperator(GridPtr grid, const VoigtParams& params);

    /// Throws NumericsError carrying state.t if non-finite values appear.
    Tendency operator()(const State& state) const;

    /// Buoyancy production alone: (1+eps|k|)^(-alpha) i k1 thetahat_k.
    SpectralField buoyancy(const SpectralField& theta_hat) const;

    const VoigtParams& params() const noexcept { return params_; }
    const GridPtr& grid() const noexcept { return grid_; }

private:
    GridPtr grid_;
    VoigtParams params_;
    std::vector<double> mult_alpha_;  // per flat mode, masked entries only meaningful
    std::vector<double> mult_beta_;
};

/// One-shot variants for callers without a cached operator.
Tendency rhs(const State& state, const VoigtParams& params);
SpectralField buoyancy_term(const SpectralField& theta_hat, const VoigtParams& params);

}  // namespace vb
