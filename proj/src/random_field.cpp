#include "vb/random_field.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "vb/errors.hpp"

namespace vb {

SpectralField random_bandlimited_field(const GridPtr& grid, int kmax, double decay,
                                       std::uint64_t seed) {
    if (kmax < 1 || kmax > grid->dealias_limit())
        throw ConfigError("random field: kmax must lie in [1, N/3]");

    std::mt19937_64 rng(seed);
    // Raw 53-bit mantissas, not uniform_real_distribution: the distribution's
    // output is implementation-defined and would break cross-toolchain
    // reproducibility of seeded data.
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    SpectralField f(grid);
    for (int k1 = 0; k1 <= kmax; ++k1) {
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 < 0) continue;  // mirror of an already visited mode
            const double mag =
                std::pow(1.0 + std::sqrt(static_cast<double>(k1) * k1 + k2 * k2), -decay);
            if (k1 == 0 && k2 == 0) {
                f.mode(0, 0) = {mag, 0.0};
                continue;
            }
            const double phase = 2.0 * std::numbers::pi * unit();
            const std::complex<double> c = mag * std::complex<double>(std::cos(phase), std::sin(phase));
            f.mode(k1, k2) = c;
            f.mode(-k1, -k2) = std::conj(c);
        }
    }
    return f;
}

void normalize_l2(SpectralField& f, double target) {
    const double norm = l2_norm(f);
    if (norm == 0.0) return;
    const double s = target / norm;
    for (auto& c : f.coeffs) c *= s;
}

}  // namespace vb
