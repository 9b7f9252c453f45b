#include "vb/oracle.hpp"

#include <cmath>

#include "vb/errors.hpp"
#include "vb/random_field.hpp"
#include "vb/spectral_ops.hpp"

namespace vb {

DenseModeArray to_dense(const SpectralField& f, int kmax) {
    DenseModeArray d(kmax);
    for (int k1 = -kmax; k1 <= kmax; ++k1)
        for (int k2 = -kmax; k2 <= kmax; ++k2) d.at(k1, k2) = f.mode(k1, k2);
    return d;
}

SpectralField to_field(const DenseModeArray& d, const GridPtr& grid) {
    if (2 * d.kmax >= grid->size())
        throw ConstraintViolation("to_field: dense table does not fit on the grid");
    SpectralField f(grid);
    for (int k1 = -d.kmax; k1 <= d.kmax; ++k1)
        for (int k2 = -d.kmax; k2 <= d.kmax; ++k2) f.mode(k1, k2) = d.at(k1, k2);
    return f;
}

DenseModeArray convolution_flux_direct(const DenseModeArray& u1, const DenseModeArray& u2,
                                       const DenseModeArray& f, int out_limit) {
    if (u1.kmax > kOracleSupportLimit || u2.kmax > kOracleSupportLimit ||
        f.kmax > kOracleSupportLimit)
        throw ConstraintViolation("convolution_flux_direct: support exceeds the cost guard (kmax 8)");
    if (u1.kmax != u2.kmax)
        throw ConstraintViolation("convolution_flux_direct: velocity components differ in support");
    if (out_limit < 0) throw ConstraintViolation("convolution_flux_direct: negative output limit");

    DenseModeArray out(out_limit);
    for (int k1 = -out_limit; k1 <= out_limit; ++k1) {
        for (int k2 = -out_limit; k2 <= out_limit; ++k2) {
            std::complex<double> acc1{0.0, 0.0}, acc2{0.0, 0.0};
            for (int p1 = -u1.kmax; p1 <= u1.kmax; ++p1) {
                for (int p2 = -u1.kmax; p2 <= u1.kmax; ++p2) {
                    const int q1 = k1 - p1, q2 = k2 - p2;
                    if (!f.contains(q1, q2)) continue;
                    const std::complex<double> fq = f.at(q1, q2);
                    acc1 += u1.at(p1, p2) * fq;
                    acc2 += u2.at(p1, p2) * fq;
                }
            }
            out.at(k1, k2) = std::complex<double>(0.0, 1.0) *
                             (static_cast<double>(k1) * acc1 + static_cast<double>(k2) * acc2);
        }
    }
    return out;
}

Tendency single_mode_tendency(const GridPtr& grid, Wavenumber k0, double amplitude,
                              const VoigtParams& params) {
    if (k0.k1 == 0 && k0.k2 == 0)
        throw ConstraintViolation("single_mode_tendency: k0 must be nonzero");
    if (std::abs(k0.k1) > grid->dealias_limit() || std::abs(k0.k2) > grid->dealias_limit())
        throw ConstraintViolation("single_mode_tendency: k0 outside the dealias mask");

    // theta = A sin(k0.x) = A/(2i) e^{i k0.x} - A/(2i) e^{-i k0.x}
    const std::complex<double> plus(0.0, -0.5 * amplitude);
    const double mult = voigt_inverse_multiplier(k0, params, params.alpha);

    Tendency out{SpectralField(grid), SpectralField(grid)};
    out.d_omega.mode(k0.k1, k0.k2) =
        mult * std::complex<double>(0.0, static_cast<double>(k0.k1)) * plus;
    out.d_omega.mode(-k0.k1, -k0.k2) =
        mult * std::complex<double>(0.0, static_cast<double>(-k0.k1)) * std::conj(plus);
    return out;
}

OracleReport run_oracle_suite(int seeds) {
    OracleReport report;
    report.seeds = seeds;

    const auto grid = make_grid(16);
    const int limit = grid->dealias_limit();  // 5: the direct sum stays tiny

    for (int seed = 0; seed < seeds; ++seed) {
        SpectralField omega =
            random_bandlimited_field(grid, limit, 2.0, 1000u + static_cast<std::uint64_t>(seed));
        omega.mode(0, 0) = {0.0, 0.0};
        normalize_l2(omega, 1.0);
        SpectralField theta =
            random_bandlimited_field(grid, limit, 2.0, 2000u + static_cast<std::uint64_t>(seed));
        normalize_l2(theta, 1.0);

        auto [u1, u2] = biot_savart(omega);

        const DenseModeArray du1 = to_dense(u1, limit);
        const DenseModeArray du2 = to_dense(u2, limit);

        for (const SpectralField* f : {&omega, &theta}) {
            const SpectralField spectral = divergence_flux(u1, u2, *f);
            const DenseModeArray direct =
                convolution_flux_direct(du1, du2, to_dense(*f, limit), limit);
            for (int k1 = -limit; k1 <= limit; ++k1)
                for (int k2 = -limit; k2 <= limit; ++k2)
                    report.max_flux_error =
                        std::max(report.max_flux_error,
                                 std::abs(direct.at(k1, k2) - spectral.mode(k1, k2)));
        }
    }

    const Wavenumber k0s[] = {{1, 0}, {0, 1}, {3, 4}};
    const double epsilons[] = {0.0, 1.0};
    const double alphas[] = {1.0, 4.0 / 3.0, 2.5};
    for (const auto k0 : k0s) {
        for (const double eps : epsilons) {
            for (const double alpha : alphas) {
                const VoigtParams params{eps, alpha, 1.0};
                State state;
                state.omega_hat = SpectralField(grid);
                state.theta_hat = SpectralField(grid);
                const std::complex<double> plus(0.0, -0.5);
                state.theta_hat.mode(k0.k1, k0.k2) = plus;
                state.theta_hat.mode(-k0.k1, -k0.k2) = std::conj(plus);

                const Tendency expected = single_mode_tendency(grid, k0, 1.0, params);
                const Tendency got = rhs(state, params);
                for (std::size_t p = 0; p < grid->modes(); ++p) {
                    report.max_tendency_error = std::max(
                        report.max_tendency_error,
                        std::abs(got.d_omega.coeffs[p] - expected.d_omega.coeffs[p]));
                    report.max_tendency_error = std::max(
                        report.max_tendency_error,
                        std::abs(got.d_theta.coeffs[p] - expected.d_theta.coeffs[p]));
                }
            }
        }
    }

    report.pass = report.max_flux_error < report.tolerance &&
                  report.max_tendency_error < report.tolerance;
    return report;
}

}  // namespace vb
