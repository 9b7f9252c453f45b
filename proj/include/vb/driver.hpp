#pragma once

#include <string>
#include <vector>

#include "vb/config.hpp"
#include "vb/diagnostics.hpp"

namespace vb {

/// Result of one complete simulation run.
struct RunResult {
    State final_state;
    VoigtParams params;  // the parameters actually integrated (checkpoint wins on resume)
    std::vector<DiagnosticsRecord> records;
    std::string diagnostics_path;  // empty when writing was disabled
    std::string checkpoint_path;   // empty when no checkpoint was written
};

/// Runs one simulation described by `config`:
///  - builds the grid and initial state (or resumes from config.resume_from,
///    whose grid size must match and whose parameters replace config.params),
///  - integrates with the configured step control,
///  - streams diagnostics records as NDJSON into
///    output.directory / output.diagnostics_file (creating the directory),
///  - writes a checkpoint every output.checkpoint_every_steps steps and again
///    at the end when output.checkpoint_file is set.
///
/// With write_outputs = false nothing touches the filesystem; records are
/// still collected in memory (used by the in-process laboratories and tests).
RunResult run_simulation(const SolverConfig& config, bool write_outputs = true);

}  // namespace vb
