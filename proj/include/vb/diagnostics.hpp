#pragma once

#include <span>
#include <utility>
#include <vector>

#include "vb/dynamics.hpp"

namespace vb {

struct SobolevNorm {
    double homogeneous = 0.0;    // (sum |k|^(2s) |fhat|^2)^(1/2), k = 0 skipped for s < 0
    double inhomogeneous = 0.0;  // (sum (1+|k|)^(2s) |fhat|^2)^(1/2)
};

/// Both Sobolev norms of order s in one pass over the coefficients.
SobolevNorm sobolev_norm(const SpectralField& f, double s);

/// Quadratic forms the semi-discrete system preserves exactly (up to the
/// time discretization): sum_k (1 + eps|k|)^gamma |fhat_k|^2 with gamma = 1
/// for the classical pair and gamma = beta (theta) / alpha (omega) for the
/// fractional pair.  The theta forms are conserved; the omega forms obey the
/// buoyancy production balance.
double voigt_theta_energy(const SpectralField& theta_hat, const VoigtParams& params);
double voigt_omega_energy(const SpectralField& omega_hat, const VoigtParams& params);

/// (fractional theta invariant, fractional omega form).
std::pair<double, double> fractional_invariants(const State& state, const VoigtParams& params);

/// Physical-space L^p norm under the uniform grid measure; p = infinity gives
/// the grid maximum of |f|.  Requires p >= 1.
double lp_norm(const SpectralField& f, double p);

/// One structured observation of a trajectory.  All entries are finite for a
/// healthy run.  hs_omega/hs_theta hold the inhomogeneous H^s norms for the
/// configured list of s values, in order.
struct DiagnosticsRecord {
    double t = 0.0;
    double l2_omega = 0.0;
    double l2_theta = 0.0;
    double h_half_omega = 0.0;  // homogeneous H^{1/2} seminorm
    double h_half_theta = 0.0;
    double q_theta = 0.0;
    double q_omega = 0.0;
    double frac_q_theta = 0.0;
    double frac_q_omega = 0.0;
    double max_omega = 0.0;  // grid sup norms
    double max_theta = 0.0;
    double max_u = 0.0;  // grid max of sqrt(u1^2+u2^2)
    double bkm_integral = 0.0;
    std::vector<double> hs_omega;
    std::vector<double> hs_theta;
    double bound_slack = 0.0;  // sqrt(q_omega(t)) - sqrt(q_omega(0)) - t*sqrt(q_theta(0))
};

/// Trapezoid update of the regularity integral of max|omega| + max|theta|.
double bkm_accumulate(double previous, const DiagnosticsRecord& prev_record,
                      const DiagnosticsRecord& next_record);

/// Stateful observer companion: remembers the initial energies, accumulates
/// the regularity integral, and emits one record per call.  Calls must carry
/// increasing t (the first call repeats the initial state).
class DiagnosticsEngine {
public:
    DiagnosticsEngine(const State& initial, const VoigtParams& params,
                      std::vector<double> sobolev_s);

    DiagnosticsRecord observe(const State& state);

    double initial_theta_energy() const noexcept { return a0_; }
    double initial_omega_h_half() const noexcept { return omega0_h_half_; }
    const std::vector<double>& sobolev_s() const noexcept { return sobolev_s_; }

private:
    VoigtParams params_;
    std::vector<double> sobolev_s_;
    double a0_;             // q_theta at the initial state
    double omega0_h_half_;  // sqrt(q_omega) at the initial state
    bool have_prev_ = false;
    DiagnosticsRecord prev_;
};

struct GrowthBoundPoint {
    double t = 0.0;
    double residual = 0.0;
    double slack = 0.0;
    bool within = false;
};

/// Evaluates the linear growth bound
///   sqrt(q_omega(t)) <= sqrt(q_omega(0)) + t * sqrt(a0)
/// against a record series.  The inequality is specific to the classical
/// system at epsilon = 1; any other parameters are refused.
std::vector<GrowthBoundPoint> check_growth_bound(std::span<const DiagnosticsRecord> series,
                                                 double a0, double omega0_h_half,
                                                 const VoigtParams& params);

}  // namespace vb
