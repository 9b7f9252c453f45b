#include "vb/field.hpp"

#include <cmath>

#include "vb/errors.hpp"

namespace vb {

void dealias_in_place(SpectralField& f) {
    const auto& g = *f.grid;
    for (std::size_t p = 0; p < g.modes(); ++p)
        if (!g.in_mask(p)) f.coeffs[p] = {0.0, 0.0};
}

SpectralField dealias(SpectralField f) {
    dealias_in_place(f);
    return f;
}

double l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const auto& c : f.coeffs) s += std::norm(c);
    return std::sqrt(s);
}

double max_abs_coeff(const SpectralField& f) {
    double m = 0.0;
    for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
    return m;
}

double hermitian_asymmetry(const SpectralField& f) {
    const auto& g = *f.grid;
    double m = 0.0;
    for (std::size_t p = 0; p < g.modes(); ++p) {
        const std::size_t q = g.conjugate_index(p);
        m = std::max(m, std::abs(f.coeffs[q] - std::conj(f.coeffs[p])));
    }
    return m;
}

void hermitian_symmetrize(SpectralField& f) {
    const auto& g = *f.grid;
    for (std::size_t p = 0; p < g.modes(); ++p) {
        const std::size_t q = g.conjugate_index(p);
        if (q > p) {
            const auto a = 0.5 * (f.coeffs[p] + std::conj(f.coeffs[q]));
            f.coeffs[p] = a;
            f.coeffs[q] = std::conj(a);
        } else if (q == p) {
            f.coeffs[p] = {f.coeffs[p].real(), 0.0};
        }
    }
}

bool all_finite(const SpectralField& f) {
    for (const auto& c : f.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* where) {
    if (!a.grid || !b.grid || a.grid->size() != b.grid->size())
        throw ConstraintViolation(std::string(where) + ": fields live on different grids");
}

}  // namespace vb
