#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vb/dynamics.hpp"
#include "vb/random_field.hpp"
#include "vb/timestepper.hpp"

namespace vb {

// --- initial data families ---------------------------------------------------

struct SingleModeData {
    Wavenumber k{1, 0};
    double amplitude = 1.0;
    enum class Field { omega, theta } field = Field::theta;
};

struct TaylorGreenData {
    double amplitude = 1.0;  // omega = A sin x1 sin x2, theta = A cos x1
};

struct RandomBandlimitedData {
    int kmax = 6;
    double decay = 5.0;  // spectrum (1+|k|)^(-decay); >= 4 keeps the data comfortably smooth
    std::uint64_t seed = 0;
};

using InitialData = std::variant<SingleModeData, TaylorGreenData, RandomBandlimitedData>;

/// Builds the prognostic state at t = 0: dealiased, Hermitian, omega mean-free.
State make_initial_data(const InitialData& family, const GridPtr& grid);

// --- solver configuration ----------------------------------------------------

struct OutputConfig {
    std::string directory = "out";
    std::string diagnostics_file = "diagnostics.ndjson";
    std::string checkpoint_file;      // empty: no checkpoints
    int checkpoint_every_steps = 0;   // 0: final state only (when a file is set)
};

struct SweepConfig {
    std::vector<double> epsilons;  // strictly decreasing, positive
};

struct RegimesConfig {
    std::vector<std::pair<double, double>> cells;  // (alpha, beta)
    double sobolev_s = 2.0;                        // must exceed 1
};

struct SolverConfig {
    int n = 64;
    VoigtParams params;
    StepControl control;
    InitialData initial = TaylorGreenData{};
    OutputConfig output;
    std::vector<double> sobolev_s = {2.0};
    std::optional<std::string> resume_from;
    std::optional<SweepConfig> sweep;
    std::optional<RegimesConfig> regimes;

    void validate() const;  // every module precondition checkable without running
};

/// Strict parser: unknown keys are rejected with their full path, missing or
/// ill-typed values name the offending key.  `source` labels error messages.
SolverConfig parse_config(const std::string& json_text, const std::string& source = "config");
SolverConfig load_config(const std::string& path);

/// Canonical echo of a parsed config (stable key order).
std::string config_to_json(const SolverConfig& config);

}  // namespace vb
