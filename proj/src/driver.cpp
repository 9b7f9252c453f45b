#include "vb/driver.hpp"

#include <filesystem>
#include <fstream>
#include <optional>

#include "vb/checkpoint.hpp"
#include "vb/diag_writer.hpp"
#include "vb/errors.hpp"

namespace vb {

namespace fs = std::filesystem;

RunResult run_simulation(const SolverConfig& config, bool write_outputs) {
    config.validate();

    RunResult result;
    auto grid = make_grid(config.n);

    State state;
    if (config.resume_from) {
        CheckpointData data = load_checkpoint(*config.resume_from, config.n);
        state = std::move(data.state);
        result.params = data.params;
    } else {
        state = make_initial_data(config.initial, grid);
        result.params = config.params;
    }
    const VoigtParams params = result.params;

    std::optional<std::ofstream> diag_stream;
    std::optional<DiagnosticsWriter> writer;
    fs::path checkpoint_path;
    if (write_outputs) {
        const fs::path dir(config.output.directory);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory: " + dir.string());

        const fs::path diag_path = dir / config.output.diagnostics_file;
        diag_stream.emplace(diag_path, std::ios::binary | std::ios::trunc);
        if (!*diag_stream) throw IoError("cannot open diagnostics file: " + diag_path.string());
        writer.emplace(*diag_stream);
        result.diagnostics_path = diag_path.string();

        if (!config.output.checkpoint_file.empty())
            checkpoint_path = dir / config.output.checkpoint_file;
    }

    DiagnosticsEngine engine(state, params, config.sobolev_s);
    Observer observer = [&](const State& s) {
        DiagnosticsRecord rec = engine.observe(s);
        if (writer) writer->write(rec);
        result.records.push_back(std::move(rec));
    };

    StepHook hook;
    if (!checkpoint_path.empty() && config.output.checkpoint_every_steps > 0) {
        const int cadence = config.output.checkpoint_every_steps;
        hook = [&, cadence](const State& s, long step) {
            if (step % cadence == 0) save_checkpoint(checkpoint_path.string(), s, params);
        };
    }

    result.final_state = integrate(std::move(state), config.control, params, observer, hook);

    if (!checkpoint_path.empty()) {
        save_checkpoint(checkpoint_path.string(), result.final_state, params);
        result.checkpoint_path = checkpoint_path.string();
    }
    if (diag_stream) {
        diag_stream->flush();
        if (!*diag_stream) throw IoError("failed writing diagnostics file: " + result.diagnostics_path);
    }
    return result;
}

}  // namespace vb
