#pragma once

#include <cstdint>

#include "vb/field.hpp"

namespace vb {

/// Band-limited random real field: |fhat_k| = (1 + |k|)^(-decay) for
/// |k1|,|k2| <= kmax with phases drawn deterministically from the seed, the
/// mirror modes conjugated, and the k = 0 coefficient real.  The phase stream
/// is a fixed function of (seed, lattice walk order), so equal arguments give
/// bitwise-equal fields on every platform.
SpectralField random_bandlimited_field(const GridPtr& grid, int kmax, double decay,
                                       std::uint64_t seed);

/// Rescales so that l2_norm(f) == target (no-op for an identically zero field).
void normalize_l2(SpectralField& f, double target);

}  // namespace vb
