#include "vb/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "vb/diagnostics.hpp"
#include "vb/errors.hpp"
#include "vb/timestepper.hpp"

namespace vb {

namespace {

// --- shared machinery --------------------------------------------------------

/// Runs `body(i)` for i in [0, count) on up to `workers` threads.  The first
/// exception wins and is rethrown on the calling thread after the join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
    if (workers < 1) workers = 1;
    const int threads = static_cast<int>(std::min<std::size_t>(count, workers));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Integrates one run and snapshots the state at every observation time.
std::vector<State> capture_snapshots(const State& initial, const StepControl& control,
                                     const VoigtParams& params) {
    std::vector<State> snaps;
    integrate(initial, control, params, [&](const State& s) { snaps.push_back(s); });
    return snaps;
}

struct ErrorPoint {
    double e = 0.0;
    double u_l2 = 0.0;
    double theta_l2 = 0.0;
};

/// Difference functional between two states on the same grid:
///   E = |du|^2_L2 + |dtheta|^2_L2 + eps (|du|^2_{H1/2} + |dtheta|^2_{H1/2})
/// with du recovered from the vorticity difference, so that
/// |du|^2 at mode k is |domega_k|^2 / |k|^2 (k = 0 carries no velocity).
ErrorPoint error_functional(const State& voigt, const State& reference, double epsilon) {
    require_same_grid(voigt.omega_hat, reference.omega_hat, "error_functional");
    require_same_grid(voigt.theta_hat, reference.theta_hat, "error_functional");
    const SpectralGrid& grid = *voigt.omega_hat.grid;

    double u2 = 0.0, u_half = 0.0, th2 = 0.0, th_half = 0.0;
    for (std::size_t i = 0; i < grid.modes(); ++i) {
        const double kmag = grid.wavenumber_magnitude(i);
        const double dth = std::abs(voigt.theta_hat.coeffs[i] - reference.theta_hat.coeffs[i]);
        th2 += dth * dth;
        th_half += kmag * dth * dth;
        if (kmag > 0.0) {
            const double dom = std::abs(voigt.omega_hat.coeffs[i] - reference.omega_hat.coeffs[i]);
            u2 += dom * dom / (kmag * kmag);
            u_half += dom * dom / kmag;
        }
    }
    ErrorPoint p;
    p.e = u2 + th2 + epsilon * (u_half + th_half);
    p.u_l2 = std::sqrt(u2);
    p.theta_l2 = std::sqrt(th2);
    return p;
}

/// Resolution check: largest coefficient magnitude in the outermost retained
/// band (max(|k1|,|k2|) >= dealias_limit - 1) relative to the overall peak,
/// over both fields.  Well-resolved smooth runs keep this tiny.
double spectral_tail_ratio(const State& state) {
    const SpectralGrid& grid = *state.omega_hat.grid;
    const int band_start = grid.dealias_limit() - 1;
    double peak = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < grid.modes(); ++i) {
        if (!grid.in_mask(i)) continue;
        const Wavenumber k = grid.wavenumber(i);
        const double mag =
            std::max(std::abs(state.omega_hat.coeffs[i]), std::abs(state.theta_hat.coeffs[i]));
        peak = std::max(peak, mag);
        if (std::max(std::abs(k.k1), std::abs(k.k2)) >= band_start) tail = std::max(tail, mag);
    }
    return peak > 0.0 ? tail / peak : 0.0;
}

void require_fixed_dt(const SolverConfig& config, const char* what) {
    if (config.control.mode != StepControl::Mode::fixed_dt)
        throw ConfigError(std::string(what) + ": requires control.mode = fixed_dt "
                                              "(both runs must share one time grid)");
}

PairSeries series_against_reference(const std::vector<State>& voigt,
                                    const std::vector<State>& reference, double epsilon) {
    if (voigt.size() != reference.size())
        throw ConstraintViolation("paired runs produced different observation counts");
    PairSeries series;
    series.times.reserve(voigt.size());
    series.e.reserve(voigt.size());
    for (std::size_t i = 0; i < voigt.size(); ++i) {
        if (voigt[i].t != reference[i].t)
            throw ConstraintViolation("paired runs drifted off the shared time grid");
        const ErrorPoint p = error_functional(voigt[i], reference[i], epsilon);
        series.times.push_back(voigt[i].t);
        series.e.push_back(p.e);
        series.u_l2.push_back(p.u_l2);
        series.theta_l2.push_back(p.theta_l2);
    }
    series.tail_ratio = spectral_tail_ratio(reference.back());
    return series;
}

}  // namespace

// --- public operations -------------------------------------------------------

PairSeries run_pair(double epsilon, const SolverConfig& config) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw ConfigError("run_pair: epsilon must be finite and >= 0");
    require_fixed_dt(config, "run_pair");

    auto grid = make_grid(config.n);
    const State initial = make_initial_data(config.initial, grid);

    const VoigtParams voigt_params{epsilon, 1.0, 1.0};
    const VoigtParams reference_params{0.0, 1.0, 1.0};

    const std::vector<State> voigt = capture_snapshots(initial, config.control, voigt_params);
    const std::vector<State> reference =
        capture_snapshots(initial, config.control, reference_params);
    return series_against_reference(voigt, reference, epsilon);
}

ConvergenceReport sweep_epsilon(const SolverConfig& config, const std::vector<double>& epsilons,
                                int workers) {
    if (epsilons.empty()) throw ConfigError("sweep_epsilon: epsilons must not be empty");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0) || !std::isfinite(epsilons[i]))
            throw ConfigError("sweep_epsilon: epsilons must be positive and finite");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
            throw ConfigError("sweep_epsilon: epsilons must be strictly decreasing");
    }
    require_fixed_dt(config, "sweep_epsilon");

    auto grid = make_grid(config.n);
    const State initial = make_initial_data(config.initial, grid);

    // One shared reference run; every epsilon is compared against it.
    const VoigtParams reference_params{0.0, 1.0, 1.0};
    const std::vector<State> reference =
        capture_snapshots(initial, config.control, reference_params);

    std::vector<PairSeries> series(epsilons.size());
    parallel_for(epsilons.size(), workers, [&](std::size_t i) {
        const VoigtParams voigt_params{epsilons[i], 1.0, 1.0};
        const std::vector<State> voigt = capture_snapshots(initial, config.control, voigt_params);
        series[i] = series_against_reference(voigt, reference, epsilons[i]);
    });

    ConvergenceReport report;
    report.epsilons = epsilons;
    report.time_grid = series.front().times;
    report.tail_ratio = series.front().tail_ratio;
    for (const PairSeries& s : series) {
        report.e_max.push_back(*std::max_element(s.e.begin(), s.e.end()));
        double metric = 0.0;
        for (std::size_t j = 0; j < s.times.size(); ++j)
            metric = std::max(metric, s.u_l2[j] + s.theta_l2[j]);
        report.metric_max.push_back(metric);
    }
    for (std::size_t i = 0; i + 1 < epsilons.size(); ++i)
        report.rates.push_back(report.e_max[i + 1] / report.e_max[i]);

    report.e_max_strictly_decreasing = true;
    report.metric_strictly_decreasing = true;
    for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
        if (!(report.e_max[i + 1] < report.e_max[i])) report.e_max_strictly_decreasing = false;
        if (!(report.metric_max[i + 1] < report.metric_max[i]))
            report.metric_strictly_decreasing = false;
    }

    double ratio_sum = 0.0;
    int halvings = 0;
    for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
        if (std::abs(epsilons[i + 1] / epsilons[i] - 0.5) <= 1e-9) {
            ratio_sum += report.rates[i];
            ++halvings;
        }
    }
    if (halvings > 0) report.mean_halving_ratio = ratio_sum / halvings;

    const bool window_ok =
        halvings == 0 || (report.mean_halving_ratio >= kHalvingRatioLow &&
                          report.mean_halving_ratio <= kHalvingRatioHigh);
    report.pass = report.e_max_strictly_decreasing && window_ok;
    return report;
}

bool regime_is_proven(double alpha, double beta) {
    constexpr double tol = 1e-12;
    if (alpha == 1.0 && beta == 1.0) return true;  // classical pair
    if (alpha + beta >= 2.0 - tol && alpha > 1.0 && beta >= 2.0 / 3.0 - tol) return true;
    if (alpha > 2.0 && beta == 0.0) return true;
    return false;
}

std::vector<RegimeCell> regime_matrix(const SolverConfig& config,
                                      const std::vector<std::pair<double, double>>& cells,
                                      double sobolev_s, int workers) {
    if (cells.empty()) throw ConfigError("regime_matrix: cells must not be empty");
    if (!(sobolev_s > 1.0)) throw ConfigError("regime_matrix: sobolev_s must exceed 1");

    auto grid = make_grid(config.n);
    const State initial = make_initial_data(config.initial, grid);

    std::vector<RegimeCell> result(cells.size());
    parallel_for(cells.size(), workers, [&](std::size_t i) {
        RegimeCell cell;
        cell.alpha = cells[i].first;
        cell.beta = cells[i].second;
        cell.proven = regime_is_proven(cell.alpha, cell.beta);

        const VoigtParams params{1.0, cell.alpha, cell.beta};
        DiagnosticsEngine engine(initial, params, {sobolev_s});
        double bkm = 0.0;
        double max_hs = 0.0;
        try {
            integrate(initial, config.control, params, [&](const State& s) {
                const DiagnosticsRecord rec = engine.observe(s);
                bkm = rec.bkm_integral;
                max_hs = std::max(max_hs, rec.hs_omega.front());
            });
            cell.completed = true;
            cell.bkm_value = bkm;
            cell.max_hs_omega = max_hs;
        } catch (const NumericsError& e) {
            cell.completed = false;
            cell.blow_up_time = e.last_good_time();
            cell.error = e.what();
            if (max_hs > 0.0) cell.max_hs_omega = max_hs;
        }
        result[i] = std::move(cell);
    });
    return result;
}

}  // namespace vb
