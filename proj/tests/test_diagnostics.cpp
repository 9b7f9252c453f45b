#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "vb/diagnostics.hpp"
#include "vb/errors.hpp"
#include "vb/random_field.hpp"
#include "vb/timestepper.hpp"

using namespace vb;

namespace {

SpectralField sin_x1(const GridPtr& g, double amplitude = 1.0) {
    SpectralField f(g);
    f.mode(1, 0) = {0.0, -0.5 * amplitude};
    f.mode(-1, 0) = {0.0, 0.5 * amplitude};
    return f;
}

State taylor_green(const GridPtr& g, double a = 1.0) {
    State s;
    s.omega_hat = SpectralField(g);
    s.theta_hat = SpectralField(g);
    s.omega_hat.mode(1, 1) = {-0.25 * a, 0.0};
    s.omega_hat.mode(-1, -1) = {-0.25 * a, 0.0};
    s.omega_hat.mode(1, -1) = {0.25 * a, 0.0};
    s.omega_hat.mode(-1, 1) = {0.25 * a, 0.0};
    s.theta_hat.mode(1, 0) = {0.5 * a, 0.0};
    s.theta_hat.mode(-1, 0) = {0.5 * a, 0.0};
    return s;
}

}  // namespace

TEST_CASE("sobolev_norm: single-mode closed forms") {
    auto g = make_grid(16);
    SpectralField f = sin_x1(g);

    SobolevNorm s0 = sobolev_norm(f, 0.0);
    CHECK(s0.homogeneous == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(s0.inhomogeneous == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

    SobolevNorm s_half = sobolev_norm(f, 0.5);
    CHECK(s_half.homogeneous == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));  // |k| = 1
    CHECK(s_half.inhomogeneous == doctest::Approx(1.0).epsilon(1e-14));           // (1+1)^1 * 1/2

    SpectralField f2(g);
    f2.mode(2, 0) = {0.0, -0.5};
    f2.mode(-2, 0) = {0.0, 0.5};
    SobolevNorm s1 = sobolev_norm(f2, 1.0);
    CHECK(s1.homogeneous == doctest::Approx(2.0 * std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("sobolev_norm: negative s skips the mean in the homogeneous sum") {
    auto g = make_grid(16);
    SpectralField f = sin_x1(g);
    f.mode(0, 0) = {1.0, 0.0};
    SobolevNorm s = sobolev_norm(f, -1.0);
    CHECK(s.homogeneous == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));  // mean skipped
    CHECK(s.inhomogeneous == doctest::Approx(std::sqrt(1.0 + 2.0 * 0.25 * 0.25)).epsilon(1e-14));
}

TEST_CASE("voigt energies: arithmetic on sin x1") {
    auto g = make_grid(16);
    SpectralField f = sin_x1(g);
    CHECK(voigt_theta_energy(f, {1.0, 1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(voigt_theta_energy(f, {0.0, 1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(voigt_omega_energy(f, {1.0, 1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    SpectralField zero(g);
    CHECK(voigt_theta_energy(zero, {1.0, 1.0, 1.0}) == 0.0);
}

TEST_CASE("fractional invariants: exponent arithmetic and consistency at (1,1)") {
    auto g = make_grid(16);
    State s;
    s.omega_hat = SpectralField(g);
    s.theta_hat = sin_x1(g);

    auto [fq_theta, fq_omega] = fractional_invariants(s, {1.0, 1.0, 2.0 / 3.0});
    CHECK(fq_theta == doctest::Approx(0.5 * std::pow(2.0, 2.0 / 3.0)).epsilon(1e-14));
    CHECK(fq_omega == 0.0);

    auto [fq_theta0, fq_omega0] = fractional_invariants(s, {1.0, 1.0, 0.0});
    CHECK(fq_theta0 == doctest::Approx(0.5).epsilon(1e-14));  // beta = 0 reduces to L2^2
    (void)fq_omega0;

    // At alpha = beta = 1 the fractional forms coincide with the linear-weight forms.
    s.omega_hat = random_bandlimited_field(g, 5, 2.0, 12);
    s.omega_hat.mode(0, 0) = {0.0, 0.0};
    s.theta_hat = random_bandlimited_field(g, 5, 2.0, 13);
    const VoigtParams classical{1.0, 1.0, 1.0};
    auto [ft, fo] = fractional_invariants(s, classical);
    CHECK(ft == doctest::Approx(voigt_theta_energy(s.theta_hat, classical)).epsilon(1e-14));
    CHECK(fo == doctest::Approx(voigt_omega_energy(s.omega_hat, classical)).epsilon(1e-14));
}

TEST_CASE("lp_norm: constants, Parseval cross-check, grid maximum") {
    auto g = make_grid(16);
    SpectralField c(g);
    c.mode(0, 0) = {-2.5, 0.0};
    CHECK(lp_norm(c, 1.0) == doctest::Approx(2.5).epsilon(1e-13));
    CHECK(lp_norm(c, 2.0) == doctest::Approx(2.5).epsilon(1e-13));
    CHECK(lp_norm(c, std::numeric_limits<double>::infinity()) == doctest::Approx(2.5).epsilon(1e-13));

    SpectralField f = sin_x1(g);
    CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(lp_norm(f, 2.0) == doctest::Approx(sobolev_norm(f, 0.0).inhomogeneous).epsilon(1e-12));

    CHECK_THROWS_AS(lp_norm(f, 0.5), ConstraintViolation);
}

TEST_CASE("bkm_accumulate: trapezoid arithmetic") {
    DiagnosticsRecord a, b;
    a.t = 0.0;
    a.max_omega = 1.0;
    a.max_theta = 2.0;
    b.t = 0.5;
    b.max_omega = 3.0;
    b.max_theta = 4.0;
    CHECK(bkm_accumulate(1.0, a, b) == doctest::Approx(1.0 + 0.5 * (3.0 + 7.0) / 2.0).epsilon(1e-15));

    DiagnosticsRecord z0 = a, z1 = b;
    z0.max_omega = z0.max_theta = z1.max_omega = z1.max_theta = 0.0;
    CHECK(bkm_accumulate(0.0, z0, z1) == 0.0);
}

TEST_CASE("DiagnosticsEngine: record structure on a short classical run") {
    auto g = make_grid(32);
    State s = taylor_green(g);
    const VoigtParams params{1.0, 1.0, 1.0};
    DiagnosticsEngine engine(s, params, {2.0, 0.0});

    StepControl c;
    c.dt = 5e-3;
    c.t_end = 0.2;
    c.observe_every_steps = 5;
    std::vector<DiagnosticsRecord> records;
    integrate(s, c, params, [&](const State& st) { records.push_back(engine.observe(st)); });

    REQUIRE(records.size() >= 3);
    CHECK(records.front().t == 0.0);
    CHECK(records.back().t == 0.2);
    CHECK(records.front().bkm_integral == 0.0);
    CHECK(records.front().bound_slack == 0.0);
    CHECK(records.front().l2_omega == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(records.front().l2_theta == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(records.front().hs_omega.size() == 2);

    for (std::size_t i = 1; i < records.size(); ++i) {
        CHECK(records[i].t > records[i - 1].t);
        CHECK(records[i].bkm_integral >= records[i - 1].bkm_integral);
        CHECK(std::isfinite(records[i].q_omega));
        // Exact semi-discrete conservation: only time-discretization drift remains.
        CHECK(records[i].q_theta == doctest::Approx(records.front().q_theta).epsilon(1e-12));
        CHECK(records[i].frac_q_theta == doctest::Approx(records.front().frac_q_theta).epsilon(1e-12));
    }
}

TEST_CASE("DiagnosticsEngine: rejects non-increasing time") {
    auto g = make_grid(16);
    State s = taylor_green(g);
    DiagnosticsEngine engine(s, {1.0, 1.0, 1.0}, {2.0});
    (void)engine.observe(s);
    CHECK_THROWS_AS(engine.observe(s), ConstraintViolation);
}

TEST_CASE("check_growth_bound: refuses parameters away from the stated regime") {
    auto g = make_grid(16);
    State s = taylor_green(g);
    DiagnosticsEngine engine(s, {1.0, 1.0, 1.0}, {2.0});
    std::vector<DiagnosticsRecord> series{engine.observe(s)};

    CHECK_THROWS_AS(check_growth_bound(series, 1.0, 0.0, VoigtParams{0.5, 1.0, 1.0}),
                    ConstraintViolation);
    CHECK_THROWS_AS(check_growth_bound(series, 1.0, 0.0, VoigtParams{1.0, 2.0, 1.0}),
                    ConstraintViolation);
    CHECK_THROWS_AS(check_growth_bound(series, 1.0, 0.0, VoigtParams{1.0, 1.0, 0.5}),
                    ConstraintViolation);
    CHECK_NOTHROW(check_growth_bound(series, 1.0, 0.0, VoigtParams{1.0, 1.0, 1.0}));
}

TEST_CASE("check_growth_bound: buoyancy-driven run stays under the line") {
    auto g = make_grid(32);
    State s;
    s.omega_hat = SpectralField(g);
    s.theta_hat = sin_x1(g);
    const VoigtParams params{1.0, 1.0, 1.0};
    DiagnosticsEngine engine(s, params, {2.0});

    StepControl c;
    c.dt = 2e-3;
    c.t_end = 0.5;
    c.observe_every_steps = 25;
    std::vector<DiagnosticsRecord> series;
    integrate(s, c, params, [&](const State& st) { series.push_back(engine.observe(st)); });

    auto points = check_growth_bound(series, engine.initial_theta_energy(),
                                     engine.initial_omega_h_half(), params);
    REQUIRE(points.size() == series.size());
    CHECK(points.front().residual == 0.0);
    for (const auto& p : points) {
        CHECK(p.within);
        CHECK(p.slack == doctest::Approx(1e-6).epsilon(1e-12));  // omega0 = 0
    }
    // Strict inequality for t > 0: the pairing never saturates Cauchy-Schwarz.
    CHECK(points.back().residual < 0.0);
}

TEST_CASE("transport regime: theta sup norms nonincreasing for an epsilon=0 run") {
    auto g = make_grid(64);
    State s;
    s.omega_hat = random_bandlimited_field(g, 6, 5.0, 31);
    s.omega_hat.mode(0, 0) = {0.0, 0.0};
    s.theta_hat = random_bandlimited_field(g, 6, 5.0, 32);
    const VoigtParams params{0.0, 1.0, 1.0};

    StepControl c;
    c.dt = 2e-3;
    c.t_end = 0.25;
    c.observe_every_steps = 25;

    std::vector<double> l2s, l4s, linfs;
    integrate(s, c, params, [&](const State& st) {
        l2s.push_back(lp_norm(st.theta_hat, 2.0));
        l4s.push_back(lp_norm(st.theta_hat, 4.0));
        linfs.push_back(lp_norm(st.theta_hat, std::numeric_limits<double>::infinity()));
    });

    REQUIRE(l2s.size() >= 3);
    for (std::size_t i = 1; i < l2s.size(); ++i) {
        CHECK(std::abs(l2s[i] / l2s[0] - 1.0) < 1e-10);   // conserved within drift budget
        CHECK(l4s[i] <= l4s[i - 1] * (1.0 + 1e-3));       // nonincreasing within Gibbs tolerance
        CHECK(linfs[i] <= linfs[i - 1] * (1.0 + 1e-3));
    }
}
