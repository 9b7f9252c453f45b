#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "vb/dynamics.hpp"

namespace vb {

/// Dense table of modes |k1|,|k2| <= kmax for brute-force cross-checks.
/// Deliberately tiny: the direct convolution below is quadratic in the table
/// size, and its whole point is to be too simple to share bugs with the FFT
/// path.
struct DenseModeArray {
    int kmax = 0;
    std::vector<std::complex<double>> coeffs;  // side 2*kmax+1, k1-major

    DenseModeArray() = default;
    explicit DenseModeArray(int kmax_in)
        : kmax(kmax_in),
          coeffs(static_cast<std::size_t>(2 * kmax_in + 1) * (2 * kmax_in + 1), {0.0, 0.0}) {}

    int side() const { return 2 * kmax + 1; }
    std::complex<double>& at(int k1, int k2) {
        return coeffs[static_cast<std::size_t>(k1 + kmax) * side() + (k2 + kmax)];
    }
    std::complex<double> at(int k1, int k2) const {
        return coeffs[static_cast<std::size_t>(k1 + kmax) * side() + (k2 + kmax)];
    }
    bool contains(int k1, int k2) const {
        return k1 >= -kmax && k1 <= kmax && k2 >= -kmax && k2 <= kmax;
    }
};

/// Largest support the direct sum accepts; the cost grows like kmax^4.
inline constexpr int kOracleSupportLimit = 8;

/// Copies the modes |k_i| <= kmax out of a spectral field.
DenseModeArray to_dense(const SpectralField& f, int kmax);

/// Places a dense table onto a grid (modes must fit inside the lattice).
SpectralField to_field(const DenseModeArray& d, const GridPtr& grid);

/// Direct convolution sum for the divergence flux,
///   out_k = i k . sum_{p+q=k} (u_p fhat_q),
/// truncated to |k1|,|k2| <= out_limit (the comparison grid's mask).  No FFT,
/// no collocation grid; quadratic cost, inputs capped at kmax <= 8.
DenseModeArray convolution_flux_direct(const DenseModeArray& u1, const DenseModeArray& u2,
                                       const DenseModeArray& f, int out_limit);

/// Closed-form tendency for the rest state with theta = amplitude*sin(k0.x):
/// d_omega has the pair +-k0 with coefficients (1+eps|k0|)^(-alpha) i k0_1
/// thetahat_{+-k0}, d_theta is zero.
Tendency single_mode_tendency(const GridPtr& grid, Wavenumber k0, double amplitude,
                              const VoigtParams& params);

struct OracleReport {
    int seeds = 0;
    double max_flux_error = 0.0;      // worst mode-wise |direct - spectral|, unit-L2 inputs
    double max_tendency_error = 0.0;  // worst coefficient gap, rhs vs closed form
    double tolerance = 1e-12;
    bool pass = false;
};

/// Seeded agreement suite on a 16^2 grid: random band-limited states, the
/// velocity from the solver's own Biot-Savart, spectral flux vs direct
/// convolution, plus the single-mode tendency matrix.
OracleReport run_oracle_suite(int seeds = 50);

}  // namespace vb
