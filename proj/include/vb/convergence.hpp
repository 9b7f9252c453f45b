#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vb/config.hpp"
#include "vb/dynamics.hpp"

namespace vb {

/// Error time series for one regularized-vs-reference pair.
struct PairSeries {
    std::vector<double> times;
    std::vector<double> e;         // E(t) = |du|^2_L2 + |dtheta|^2_L2 + eps(|du|^2_{H1/2} + |dtheta|^2_{H1/2})
    std::vector<double> u_l2;      // |u_V - u_B|_L2  (the H^{-1} vorticity metric)
    std::vector<double> theta_l2;  // |theta_V - theta_B|_L2
    double tail_ratio = 0.0;       // reference-run resolution check (outermost retained band / peak)
};

/// Integrates the regularized system (given epsilon, exponents pinned to 1)
/// and the unregularized reference (epsilon = 0) from the same initial data on
/// the same fixed-dt time grid, and returns the difference series at every
/// observation time. Requires fixed-dt control; E(0) is exactly zero and a
/// pair with epsilon = 0 is bit-zero throughout.
PairSeries run_pair(double epsilon, const SolverConfig& config);

/// Summary of a sweep over decreasing epsilon against one shared reference.
struct ConvergenceReport {
    std::vector<double> epsilons;
    std::vector<double> e_max;        // per-epsilon max over t of E
    std::vector<double> rates;        // successive ratios e_max[i+1] / e_max[i]
    std::vector<double> metric_max;   // per-epsilon max over t of (|du|_L2 + |dtheta|_L2)
    std::vector<double> time_grid;    // shared observation times
    double tail_ratio = 0.0;          // reference-run resolution check
    bool e_max_strictly_decreasing = false;
    bool metric_strictly_decreasing = false;
    // Mean of the rates whose epsilon step is an exact halving; NaN when the
    // sweep contains no halving (that clause of `pass` is then skipped).
    double mean_halving_ratio = std::numeric_limits<double>::quiet_NaN();
    bool pass = false;  // e_max strictly decreasing and mean halving ratio within the window
};

/// The "approximately first order" acceptance window for the mean halving
/// ratio: the bound only guarantees O(epsilon), so the window leaves slack.
inline constexpr double kHalvingRatioLow = 0.35;
inline constexpr double kHalvingRatioHigh = 0.75;

/// Runs the reference once and each epsilon concurrently (workers >= 1).
/// epsilons must be strictly decreasing and positive; control must be
/// fixed-dt. Any aborted member run propagates its error.
ConvergenceReport sweep_epsilon(const SolverConfig& config, const std::vector<double>& epsilons,
                                int workers = 1);

/// One cell of the fractional-exponent survey.
struct RegimeCell {
    double alpha = 1.0;
    double beta = 1.0;
    bool proven = false;     // label from the hypotheses alone, never from the run
    bool completed = false;  // integration reached t_end with finite fields
    double bkm_value = std::numeric_limits<double>::quiet_NaN();
    double max_hs_omega = std::numeric_limits<double>::quiet_NaN();
    double blow_up_time = std::numeric_limits<double>::quiet_NaN();  // last good t when aborted
    std::string error;  // abort message, empty when completed
};

/// Whether (alpha, beta) lies in a regime with a global-regularity guarantee:
/// the classical pair (1,1); alpha + beta >= 2 with alpha > 1 and beta >= 2/3;
/// or alpha > 2 with beta = 0. The two inequalities that can land exactly on
/// a boundary (alpha + beta >= 2, beta >= 2/3) are evaluated with a 1e-12
/// absolute tolerance so that values like 4/3 + 2/3 assembled in floating
/// point still qualify.
bool regime_is_proven(double alpha, double beta);

/// One integration per (alpha, beta) cell at epsilon = 1 with the config's
/// initial data and horizon; a per-cell abort is recorded in the cell and the
/// survey continues. max_hs_omega tracks the Sobolev norm of exponent
/// sobolev_s (> 1) over all observation times.
std::vector<RegimeCell> regime_matrix(const SolverConfig& config,
                                      const std::vector<std::pair<double, double>>& cells,
                                      double sobolev_s, int workers = 1);

}  // namespace vb
