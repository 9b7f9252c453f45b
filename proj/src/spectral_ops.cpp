#include "vb/spectral_ops.hpp"

#include <complex>

#include "vb/errors.hpp"
#include "vb/transform.hpp"

namespace vb {

std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& omega) {
    if (!omega.grid) throw ConstraintViolation("biot_savart: field has no grid");
    const auto& g = *omega.grid;

    const double mean_mag = std::abs(omega.coeffs[0]);
    if (mean_mag != 0.0 && mean_mag >= 1e-12 * l2_norm(omega))
        throw ConstraintViolation("biot_savart: vorticity must be mean-free on the torus");

    SpectralField u1(omega.grid), u2(omega.grid);
    for (std::size_t p = 0; p < g.modes(); ++p) {
        const auto [k1, k2] = g.wavenumber(p);
        const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
        if (ksq == 0.0) continue;  // uhat_0 = 0: mean-free velocity gauge
        const std::complex<double> w = omega.coeffs[p];
        u1.coeffs[p] = std::complex<double>(0.0, k2 / ksq) * w;
        u2.coeffs[p] = std::complex<double>(0.0, -k1 / ksq) * w;
    }
    return {std::move(u1), std::move(u2)};
}

SpectralField divergence_flux_physical(const GridPtr& grid, std::span<const double> u1_samples,
                                       std::span<const double> u2_samples,
                                       std::span<const double> f_samples) {
    const auto& g = *grid;
    const std::size_t m = g.modes();
    if (u1_samples.size() != m || u2_samples.size() != m || f_samples.size() != m)
        throw ConstraintViolation("divergence_flux: sample count mismatch");

    std::vector<double> p1(m), p2(m);
    for (std::size_t p = 0; p < m; ++p) {
        p1[p] = u1_samples[p] * f_samples[p];
        p2[p] = u2_samples[p] * f_samples[p];
    }

    SpectralField f1 = forward_transform(grid, p1);
    SpectralField f2 = forward_transform(grid, p2);

    SpectralField out(grid);
    for (std::size_t p = 0; p < m; ++p) {
        if (!g.in_mask(p)) continue;
        const auto [k1, k2] = g.wavenumber(p);
        out.coeffs[p] = std::complex<double>(0.0, static_cast<double>(k1)) * f1.coeffs[p] +
                        std::complex<double>(0.0, static_cast<double>(k2)) * f2.coeffs[p];
    }
    out.coeffs[0] = {0.0, 0.0};  // a divergence has no mean; keep it exact
    return out;
}

SpectralField divergence_flux(const SpectralField& u1, const SpectralField& u2,
                              const SpectralField& f) {
    require_same_grid(u1, u2, "divergence_flux");
    require_same_grid(u1, f, "divergence_flux");
    const auto u1p = inverse_transform(u1);
    const auto u2p = inverse_transform(u2);
    const auto fp = inverse_transform(f);
    return divergence_flux_physical(f.grid, u1p, u2p, fp);
}

}  // namespace vb
