#pragma once

#include <complex>
#include <vector>

#include "vb/grid.hpp"

namespace vb {

/// Fourier coefficients of a real scalar field on a SpectralGrid.
///
/// Convention: f(x) = sum_k fhat_k exp(i k.x), so the k = 0 coefficient is the
/// spatial mean.  Real fields satisfy fhat_{-k} = conj(fhat_k).
struct SpectralField {
    GridPtr grid;
    std::vector<std::complex<double>> coeffs;

    SpectralField() = default;
    explicit SpectralField(GridPtr g)
        : grid(std::move(g)), coeffs(grid->modes(), std::complex<double>(0.0, 0.0)) {}

    std::complex<double>& at(int i1, int i2) { return coeffs[grid->index(i1, i2)]; }
    std::complex<double> at(int i1, int i2) const { return coeffs[grid->index(i1, i2)]; }

    /// Wavenumber addressing; components may be negative.
    std::complex<double>& mode(int k1, int k2) { return coeffs[grid->index_of_mode(k1, k2)]; }
    std::complex<double> mode(int k1, int k2) const { return coeffs[grid->index_of_mode(k1, k2)]; }

    int size() const { return grid ? grid->size() : 0; }
};

/// Zeroes every coefficient outside the 2/3 mask.  Idempotent.
void dealias_in_place(SpectralField& f);
SpectralField dealias(SpectralField f);

/// sqrt(sum_k |fhat_k|^2); equals the L2 norm under the uniform grid measure.
double l2_norm(const SpectralField& f);

double max_abs_coeff(const SpectralField& f);

/// max_k |fhat_{-k} - conj(fhat_k)|; zero for exactly Hermitian data.
double hermitian_asymmetry(const SpectralField& f);

/// Averages each mode with the conjugate of its reflection, pinning the
/// self-paired modes to real values.  Projects onto exactly Hermitian data.
void hermitian_symmetrize(SpectralField& f);

bool all_finite(const SpectralField& f);

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* where);

}  // namespace vb
