#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace vb {

struct Wavenumber {
    int k1 = 0;
    int k2 = 0;
};

inline bool operator==(Wavenumber a, Wavenumber b) { return a.k1 == b.k1 && a.k2 == b.k2; }

/// Uniform N x N Fourier grid on [0,2pi)^2 with a 2/3-rule dealias mask.
///
/// Coefficients are stored in FFT order: storage index i in [0,N) carries the
/// integer wavenumber i for i <= N/2 and i - N otherwise, so the mode lattice
/// is -N/2 < k_i <= N/2.  The flat index of mode (i1,i2) is i1*N + i2.
///
/// The mask retains |k1| <= floor(N/3) and |k2| <= floor(N/3).  Every retained
/// mode has its reflection -k in the table (the Nyquist line N/2 is always
/// outside the mask), so the mask is symmetric under k -> -k and quadratic
/// products of masked fields evaluated on the collocation grid alias only
/// into discarded modes.
class SpectralGrid {
public:
    explicit SpectralGrid(int n);

    int size() const noexcept { return n_; }
    std::size_t modes() const noexcept { return static_cast<std::size_t>(n_) * n_; }
    int dealias_limit() const noexcept { return n_ / 3; }
    double dx() const noexcept;

    /// Storage index (i1,i2) -> flat offset.
    std::size_t index(int i1, int i2) const noexcept {
        return static_cast<std::size_t>(i1) * n_ + i2;
    }
    /// Flat offset of the mode with wavenumber (k1,k2); components may be negative.
    std::size_t index_of_mode(int k1, int k2) const noexcept {
        return index((k1 % n_ + n_) % n_, (k2 % n_ + n_) % n_);
    }

    Wavenumber wavenumber(std::size_t flat) const noexcept {
        return {k1_[flat], k2_[flat]};
    }
    double wavenumber_magnitude(std::size_t flat) const noexcept { return kmag_[flat]; }
    bool in_mask(std::size_t flat) const noexcept { return mask_[flat] != 0; }
    std::size_t retained_mode_count() const noexcept { return retained_; }

    /// Flat offset of the reflected mode -k.
    std::size_t conjugate_index(std::size_t flat) const noexcept { return conj_[flat]; }

private:
    int n_;
    std::size_t retained_;
    std::vector<int> k1_, k2_;
    std::vector<double> kmag_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::uint32_t> conj_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

/// Builds a grid; N must be even and at least 8.
GridPtr make_grid(int n);

}  // namespace vb
