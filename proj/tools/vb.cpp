// vb — pseudo-spectral Voigt-Boussinesq laboratory, command line front end.
//
// Subcommands:
//   run           integrate one configuration, stream NDJSON diagnostics
//   sweep         epsilon-convergence study (writes convergence_report.json)
//   regimes       fractional-exponent survey (writes regime_cells.ndjson)
//   oracle-check  nonlinearity agreement suite against the direct convolution
//   info          echo the parsed config plus derived quantities
//
// Exit codes: 0 success, 1 usage, 2 invalid config, 3 runtime abort
// (non-finite state / step budget), 4 file or format trouble.
// Errors are one JSON line on stderr: {"error":"<class>","message":"..."}.
// VB_LOG=quiet|info|debug controls stderr chatter (default info).

#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vb/checkpoint.hpp"
#include "vb/config.hpp"
#include "vb/convergence.hpp"
#include "vb/diag_writer.hpp"
#include "vb/driver.hpp"
#include "vb/errors.hpp"
#include "vb/oracle.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("VB_LOG");
        if (env == nullptr) return LogLevel::info;
        const std::string value(env);
        if (value == "quiet") return LogLevel::quiet;
        if (value == "debug") return LogLevel::debug;
        return LogLevel::info;
    }();
    return level;
}

void log_info(const std::string& message) {
    if (log_level() >= LogLevel::info) std::cerr << "[vb] " << message << "\n";
}

void log_debug(const std::string& message) {
    if (log_level() >= LogLevel::debug) std::cerr << "[vb] " << message << "\n";
}

[[noreturn]] void emit_error(int code, const std::string& error_class, const std::string& message) {
    json line;
    line["error"] = error_class;
    line["message"] = message;
    std::cerr << line.dump() << "\n";
    std::exit(code);
}

/// Replaces NaN by null so every report stays valid JSON.
json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

struct CommonOptions {
    std::string config_path;
    std::string output_dir;  // overrides output.directory when nonempty
    int workers = 1;
    std::optional<std::uint64_t> seed;
};

vb::SolverConfig load_effective_config(const CommonOptions& opts) {
    vb::SolverConfig cfg = vb::load_config(opts.config_path);
    if (!opts.output_dir.empty()) cfg.output.directory = opts.output_dir;
    if (opts.seed) {
        auto* random = std::get_if<vb::RandomBandlimitedData>(&cfg.initial);
        if (random == nullptr)
            throw vb::ConfigError("--seed: config's initial_data family carries no seed");
        random->seed = *opts.seed;
    }
    cfg.validate();
    return cfg;
}

std::filesystem::path ensure_output_dir(const vb::SolverConfig& cfg) {
    const std::filesystem::path dir(cfg.output.directory);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw vb::IoError("cannot create output directory: " + dir.string());
    return dir;
}

int command_run(const CommonOptions& opts) {
    const vb::SolverConfig cfg = load_effective_config(opts);
    log_info("run: N=" + std::to_string(cfg.n) + ", t_end=" + std::to_string(cfg.control.t_end));

    const vb::RunResult result = vb::run_simulation(cfg);

    ordered_json summary;
    summary["n"] = cfg.n;
    summary["epsilon"] = result.params.epsilon;
    summary["alpha"] = result.params.alpha;
    summary["beta"] = result.params.beta;
    summary["t_final"] = result.final_state.t;
    summary["records"] = result.records.size();
    summary["diagnostics_path"] = result.diagnostics_path;
    if (result.checkpoint_path.empty())
        summary["checkpoint_path"] = nullptr;
    else
        summary["checkpoint_path"] = result.checkpoint_path;
    if (!result.records.empty()) {
        const auto& last = result.records.back();
        summary["q_theta_final"] = last.q_theta;
        summary["q_omega_final"] = last.q_omega;
        summary["bkm_integral"] = last.bkm_integral;
    }
    std::cout << summary.dump() << "\n";
    return 0;
}

int command_sweep(const CommonOptions& opts) {
    const vb::SolverConfig cfg = load_effective_config(opts);
    if (!cfg.sweep) throw vb::ConfigError("sweep: config has no \"sweep\" section");
    log_info("sweep: " + std::to_string(cfg.sweep->epsilons.size()) + " epsilon values, workers=" +
             std::to_string(opts.workers));

    const vb::ConvergenceReport report =
        vb::sweep_epsilon(cfg, cfg.sweep->epsilons, opts.workers);

    ordered_json doc;
    doc["epsilons"] = report.epsilons;
    doc["e_max"] = report.e_max;
    doc["rates"] = report.rates;
    doc["metric_max"] = report.metric_max;
    doc["mean_halving_ratio"] = number_or_null(report.mean_halving_ratio);
    doc["e_max_strictly_decreasing"] = report.e_max_strictly_decreasing;
    doc["metric_strictly_decreasing"] = report.metric_strictly_decreasing;
    doc["tail_ratio"] = report.tail_ratio;
    doc["pass"] = report.pass;
    doc["time_grid"] = report.time_grid;

    const auto dir = ensure_output_dir(cfg);
    const auto path = dir / "convergence_report.json";
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw vb::IoError("cannot open report for writing: " + path.string());
        out << doc.dump(2) << "\n";
        if (!out) throw vb::IoError("failed writing report: " + path.string());
    }
    log_info("sweep: report written to " + path.string());
    std::cout << doc.dump() << "\n";
    return 0;
}

int command_regimes(const CommonOptions& opts) {
    const vb::SolverConfig cfg = load_effective_config(opts);
    if (!cfg.regimes) throw vb::ConfigError("regimes: config has no \"regimes\" section");
    log_info("regimes: " + std::to_string(cfg.regimes->cells.size()) + " cells, workers=" +
             std::to_string(opts.workers));

    const std::vector<vb::RegimeCell> cells =
        vb::regime_matrix(cfg, cfg.regimes->cells, cfg.regimes->sobolev_s, opts.workers);

    const auto dir = ensure_output_dir(cfg);
    const auto path = dir / "regime_cells.ndjson";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw vb::IoError("cannot open regime report for writing: " + path.string());

    std::size_t completed = 0, proven = 0;
    for (const auto& cell : cells) {
        ordered_json line;
        line["v"] = 1;
        line["alpha"] = cell.alpha;
        line["beta"] = cell.beta;
        line["label"] = cell.proven ? "proven" : "conjectural";
        line["completed"] = cell.completed;
        line["bkm_value"] = number_or_null(cell.bkm_value);
        line["max_hs_omega"] = number_or_null(cell.max_hs_omega);
        line["blow_up_time"] = number_or_null(cell.blow_up_time);
        line["error"] = cell.error;
        out << line.dump() << "\n";
        if (cell.completed) ++completed;
        if (cell.proven) ++proven;
        log_debug("cell (" + std::to_string(cell.alpha) + ", " + std::to_string(cell.beta) +
                  "): " + (cell.completed ? "completed" : "aborted"));
    }
    out.flush();
    if (!out) throw vb::IoError("failed writing regime report: " + path.string());

    ordered_json summary;
    summary["cells"] = cells.size();
    summary["completed"] = completed;
    summary["proven"] = proven;
    summary["report_path"] = path.string();
    std::cout << summary.dump() << "\n";
    return 0;
}

int command_oracle_check(int seeds) {
    const vb::OracleReport report = vb::run_oracle_suite(seeds);
    ordered_json doc;
    doc["seeds"] = report.seeds;
    doc["max_flux_error"] = report.max_flux_error;
    doc["max_tendency_error"] = report.max_tendency_error;
    doc["tolerance"] = report.tolerance;
    doc["pass"] = report.pass;
    std::cout << doc.dump() << "\n";
    if (!report.pass)
        emit_error(3, "runtime", "oracle disagreement above tolerance");
    return 0;
}

int command_info(const CommonOptions& opts) {
    const vb::SolverConfig cfg = load_effective_config(opts);
    ordered_json doc = ordered_json::parse(vb::config_to_json(cfg));

    auto grid = vb::make_grid(cfg.n);
    ordered_json derived;
    derived["dx"] = grid->dx();
    derived["dealias_limit"] = grid->dealias_limit();
    derived["retained_modes"] = grid->retained_mode_count();
    if (cfg.control.mode == vb::StepControl::Mode::fixed_dt)
        derived["dt"] = cfg.control.dt;
    else
        derived["dt"] = nullptr;  // chosen adaptively from the advective bound
    doc["derived"] = derived;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral Voigt-Boussinesq laboratory"};
    app.require_subcommand(1);

    CommonOptions opts;
    int oracle_seeds = 50;

    auto add_common = [&opts](CLI::App* cmd, bool with_workers) {
        cmd->add_option("--config", opts.config_path, "configuration file (JSON)")
            ->required();
        cmd->add_option("--output", opts.output_dir, "override output.directory");
        cmd->add_option("--seed", opts.seed, "override the initial-data seed");
        if (with_workers)
            cmd->add_option("--workers", opts.workers, "concurrent runs")
                ->check(CLI::Range(1, 256));
    };

    CLI::App* cmd_run = app.add_subcommand("run", "integrate one configuration");
    add_common(cmd_run, false);
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "epsilon-convergence study");
    add_common(cmd_sweep, true);
    CLI::App* cmd_regimes = app.add_subcommand("regimes", "fractional-exponent survey");
    add_common(cmd_regimes, true);
    CLI::App* cmd_oracle = app.add_subcommand("oracle-check", "nonlinearity agreement suite");
    cmd_oracle->add_option("--seeds", oracle_seeds, "number of random states")
        ->check(CLI::Range(1, 10000));
    CLI::App* cmd_info = app.add_subcommand("info", "echo config and derived quantities");
    add_common(cmd_info, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        json line;
        line["error"] = "usage";
        line["message"] = e.what();
        std::cerr << line.dump() << "\n";
        return 1;
    }

    try {
        if (cmd_run->parsed()) return command_run(opts);
        if (cmd_sweep->parsed()) return command_sweep(opts);
        if (cmd_regimes->parsed()) return command_regimes(opts);
        if (cmd_oracle->parsed()) return command_oracle_check(oracle_seeds);
        if (cmd_info->parsed()) return command_info(opts);
    } catch (const vb::ConfigError& e) {
        emit_error(2, "config", e.what());
    } catch (const vb::NumericsError& e) {
        emit_error(3, "runtime", std::string(e.what()) + " (last good t=" +
                                     std::to_string(e.last_good_time()) + ")");
    } catch (const vb::FormatError& e) {
        emit_error(4, "format", e.what());
    } catch (const vb::IoError& e) {
        emit_error(4, "io", e.what());
    } catch (const vb::ConstraintViolation& e) {
        emit_error(3, "runtime", e.what());
    } catch (const std::exception& e) {
        emit_error(3, "runtime", e.what());
    }
    return 0;
}
