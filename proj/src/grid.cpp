#include "vb/grid.hpp"

#include <cmath>
#include <numbers>

#include "vb/errors.hpp"

namespace vb {

SpectralGrid::SpectralGrid(int n) : n_(n), retained_(0) {
    if (n < 8 || n % 2 != 0)
        throw ConfigError("grid: N must be even and >= 8, got " + std::to_string(n));

    const std::size_t m = modes();
    k1_.resize(m);
    k2_.resize(m);
    kmag_.resize(m);
    mask_.resize(m);
    conj_.resize(m);

    const int limit = dealias_limit();
    for (int i1 = 0; i1 < n_; ++i1) {
        const int w1 = (i1 <= n_ / 2) ? i1 : i1 - n_;
        for (int i2 = 0; i2 < n_; ++i2) {
            const int w2 = (i2 <= n_ / 2) ? i2 : i2 - n_;
            const std::size_t p = index(i1, i2);
            k1_[p] = w1;
            k2_[p] = w2;
            kmag_[p] = std::sqrt(static_cast<double>(w1) * w1 + static_cast<double>(w2) * w2);
            mask_[p] = (std::abs(w1) <= limit && std::abs(w2) <= limit) ? 1 : 0;
            conj_[p] = static_cast<std::uint32_t>(index((n_ - i1) % n_, (n_ - i2) % n_));
            if (mask_[p]) ++retained_;
        }
    }
}

double SpectralGrid::dx() const noexcept { return 2.0 * std::numbers::pi / n_; }

GridPtr make_grid(int n) { return std::make_shared<const SpectralGrid>(n); }

}  // namespace vb
