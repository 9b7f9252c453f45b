#pragma once

#include <span>
#include <vector>

#include "vb/field.hpp"
#include "vb/grid.hpp"

namespace vb {

/// Synthesizes physical samples from coefficients:
///   f(x_j) = sum_k fhat_k exp(i k.x_j),  x_j = 2pi j / N.
/// Returns N*N reals, row-major with j1 outer (sample(j1,j2) at flat j1*N+j2).
/// The imaginary residue of the synthesis is discarded; it is at roundoff
/// level for Hermitian coefficients.
std::vector<double> inverse_transform(const SpectralField& f);

/// Analyzes N*N real samples into coefficients with the k = 0 entry equal to
/// the sample mean, then projects onto exactly Hermitian data.  Round trips
/// against inverse_transform to a relative 1e-13.
SpectralField forward_transform(const GridPtr& grid, std::span<const double> samples);

}  // namespace vb
