#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "vb/errors.hpp"
#include "vb/oracle.hpp"
#include "vb/random_field.hpp"
#include "vb/spectral_ops.hpp"

using namespace vb;
using cd = std::complex<double>;

TEST_CASE("DenseModeArray: addressing and to_dense/to_field round trip") {
    auto g = make_grid(16);
    SpectralField f = random_bandlimited_field(g, 4, 2.0, 7);

    DenseModeArray d = to_dense(f, 4);
    CHECK(d.side() == 9);
    for (int k1 = -4; k1 <= 4; ++k1)
        for (int k2 = -4; k2 <= 4; ++k2) CHECK(d.at(k1, k2) == f.mode(k1, k2));

    SpectralField back = to_field(d, g);
    for (std::size_t p = 0; p < g->modes(); ++p) CHECK(back.coeffs[p] == f.coeffs[p]);

    CHECK(d.contains(4, -4));
    CHECK_FALSE(d.contains(5, 0));
}

TEST_CASE("to_field: rejects tables that cannot fit on the grid") {
    auto g = make_grid(16);
    DenseModeArray d(8);  // modes +-8 collide at the Nyquist line of a 16^2 grid
    CHECK_THROWS_AS(to_field(d, g), ConstraintViolation);
    CHECK_NOTHROW(to_field(DenseModeArray(7), g));
}

TEST_CASE("convolution_flux_direct: hand-computed two-mode interaction") {
    // u = (sin x1, 0), f = sin x2: the only products live at k = (+-1, +-1).
    DenseModeArray u1(1), u2(1), f(1);
    u1.at(1, 0) = cd(0.0, -0.5);
    u1.at(-1, 0) = cd(0.0, 0.5);
    f.at(0, 1) = cd(0.0, -0.5);
    f.at(0, -1) = cd(0.0, 0.5);

    DenseModeArray out = convolution_flux_direct(u1, u2, f, 2);

    CHECK(std::abs(out.at(1, 1) - cd(0.0, -0.25)) < 1e-15);
    CHECK(std::abs(out.at(1, -1) - cd(0.0, 0.25)) < 1e-15);
    CHECK(std::abs(out.at(-1, -1) - std::conj(out.at(1, 1))) < 1e-15);
    CHECK(std::abs(out.at(-1, 1) - std::conj(out.at(1, -1))) < 1e-15);

    // Everything else, including the mean, is exactly zero.
    CHECK(out.at(0, 0) == cd(0.0, 0.0));
    CHECK(out.at(1, 0) == cd(0.0, 0.0));
    CHECK(out.at(2, 2) == cd(0.0, 0.0));
    CHECK(out.at(0, 2) == cd(0.0, 0.0));
}

TEST_CASE("convolution_flux_direct: output truncation and mean-mode annihilation") {
    DenseModeArray u1(2), u2(2), f(2);
    u1.at(1, 0) = cd(0.0, -0.5);
    u1.at(-1, 0) = cd(0.0, 0.5);
    u2.at(0, 2) = cd(0.25, 0.0);
    u2.at(0, -2) = cd(0.25, 0.0);
    f.at(1, 1) = cd(0.1, 0.2);
    f.at(-1, -1) = cd(0.1, -0.2);

    DenseModeArray wide = convolution_flux_direct(u1, u2, f, 4);
    DenseModeArray narrow = convolution_flux_direct(u1, u2, f, 1);
    for (int k1 = -1; k1 <= 1; ++k1)
        for (int k2 = -1; k2 <= 1; ++k2) CHECK(narrow.at(k1, k2) == wide.at(k1, k2));
    CHECK(wide.at(0, 0) == cd(0.0, 0.0));  // ik.(...) vanishes identically at k = 0
}

TEST_CASE("convolution_flux_direct: cost and consistency guards") {
    DenseModeArray big(9), small(2);
    CHECK_THROWS_AS(convolution_flux_direct(big, big, small, 2), ConstraintViolation);
    CHECK_THROWS_AS(convolution_flux_direct(small, small, big, 2), ConstraintViolation);
    CHECK_THROWS_AS(convolution_flux_direct(small, DenseModeArray(3), small, 2),
                    ConstraintViolation);
    CHECK_THROWS_AS(convolution_flux_direct(small, small, small, -1), ConstraintViolation);
}

TEST_CASE("direct convolution matches the spectral flux on random band-limited data") {
    auto g = make_grid(16);
    const int limit = g->dealias_limit();
    SpectralField omega = random_bandlimited_field(g, limit, 2.0, 91);
    omega.mode(0, 0) = {0.0, 0.0};
    SpectralField th = random_bandlimited_field(g, limit, 2.0, 92);

    auto [u1, u2] = biot_savart(omega);
    SpectralField spectral = divergence_flux(u1, u2, th);
    DenseModeArray direct =
        convolution_flux_direct(to_dense(u1, limit), to_dense(u2, limit), to_dense(th, limit), limit);

    double worst = 0.0;
    for (int k1 = -limit; k1 <= limit; ++k1)
        for (int k2 = -limit; k2 <= limit; ++k2)
            worst = std::max(worst, std::abs(direct.at(k1, k2) - spectral.mode(k1, k2)));
    CHECK(worst < 1e-13);
}

TEST_CASE("single_mode_tendency: closed form and input validation") {
    auto g = make_grid(16);

    CHECK_THROWS_AS(single_mode_tendency(g, {0, 0}, 1.0, {1.0, 1.0, 1.0}), ConstraintViolation);
    CHECK_THROWS_AS(single_mode_tendency(g, {6, 0}, 1.0, {1.0, 1.0, 1.0}), ConstraintViolation);
    CHECK_THROWS_AS(single_mode_tendency(g, {0, -6}, 1.0, {1.0, 1.0, 1.0}), ConstraintViolation);

    // theta = sin x1 at epsilon = 1, alpha = 4/3: d_omega = 2^(-4/3) cos x1.
    Tendency t = single_mode_tendency(g, {1, 0}, 1.0, {1.0, 4.0 / 3.0, 1.0});
    const double m = std::pow(2.0, -4.0 / 3.0);
    CHECK(std::abs(t.d_omega.mode(1, 0) - cd(0.5 * m, 0.0)) < 1e-15);
    CHECK(std::abs(t.d_omega.mode(-1, 0) - cd(0.5 * m, 0.0)) < 1e-15);
    CHECK(l2_norm(t.d_theta) == 0.0);

    // A k0 with zero first component forces a zero buoyancy tendency.
    Tendency t2 = single_mode_tendency(g, {0, 3}, 2.0, {1.0, 1.0, 1.0});
    CHECK(l2_norm(t2.d_omega) == 0.0);
}

TEST_CASE("single_mode_tendency agrees with the full right-hand side") {
    auto g = make_grid(16);
    const Wavenumber k0s[] = {{1, 0}, {0, 1}, {3, 4}, {2, -3}};
    const double epsilons[] = {0.0, 1.0};
    const double alphas[] = {1.0, 4.0 / 3.0, 2.5};
    for (const auto k0 : k0s) {
        for (double eps : epsilons) {
            for (double alpha : alphas) {
                const VoigtParams params{eps, alpha, 1.0};
                State s;
                s.omega_hat = SpectralField(g);
                s.theta_hat = SpectralField(g);
                s.theta_hat.mode(k0.k1, k0.k2) = cd(0.0, -0.5);
                s.theta_hat.mode(-k0.k1, -k0.k2) = cd(0.0, 0.5);

                Tendency expected = single_mode_tendency(g, k0, 1.0, params);
                Tendency got = rhs(s, params);
                double worst = 0.0;
                for (std::size_t p = 0; p < g->modes(); ++p) {
                    worst = std::max(worst,
                                     std::abs(got.d_omega.coeffs[p] - expected.d_omega.coeffs[p]));
                    worst = std::max(worst,
                                     std::abs(got.d_theta.coeffs[p] - expected.d_theta.coeffs[p]));
                }
                CHECK(worst < 1e-13);
            }
        }
    }
}

TEST_CASE("run_oracle_suite: seeded agreement battery passes with margin") {
    OracleReport r = run_oracle_suite(3);
    CHECK(r.seeds == 3);
    CHECK(r.tolerance == 1e-12);
    CHECK(r.max_flux_error < 1e-12);
    CHECK(r.max_tendency_error < 1e-13);
    CHECK(r.pass);
}
