#pragma once

#include <span>
#include <utility>

#include "vb/field.hpp"

namespace vb {

/// Recovers the divergence-free velocity from the vorticity:
///   uhat_k = -i k_perp omegahat_k / |k|^2,  k_perp = (-k2, k1),  uhat_0 = 0.
/// Requires mean-free vorticity: |omegahat_0| must vanish or be below
/// 1e-12 * l2_norm(omega).  The output satisfies k.uhat_k = 0 identically.
std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& omega);

/// Spectral coefficients of div(u f) for dealiased inputs: forms the pointwise
/// products u1*f and u2*f on the collocation grid, analyzes them, applies the
/// 2/3 mask, and returns i k1 (u1 f)hat_k + i k2 (u2 f)hat_k.  The k = 0
/// coefficient is exactly zero.  With both inputs supported on the mask the
/// retained coefficients equal the exact convolution sum.
SpectralField divergence_flux(const SpectralField& u1, const SpectralField& u2,
                              const SpectralField& f);

/// Same contract, for callers that already hold the velocity samples
/// (one analysis of f replaces three synths + analysis per call site).
SpectralField divergence_flux_physical(const GridPtr& grid, std::span<const double> u1_samples,
                                       std::span<const double> u2_samples,
                                       std::span<const double> f_samples);

}  // namespace vb
