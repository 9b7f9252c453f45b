#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vb/diag_writer.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_root() {
    static const fs::path root = [] {
        fs::path p = fs::temp_directory_path() / "vb_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return root;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out << text;
}

CliResult run_cli(const std::string& args, const std::string& env = "VB_LOG=quiet") {
    static int counter = 0;
    const fs::path out_file = scratch_root() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err_file = scratch_root() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;

    const std::string cmd = env + " " + VB_BINARY_PATH + " " + args + " >" + out_file.string() +
                            " 2>" + err_file.string();
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

std::string tiny_run_config(const fs::path& out_dir, const std::string& extra = "") {
    return R"({
      "grid": {"N": 16},
      "params": {"epsilon": 1.0},
      "control": {"mode": "fixed_dt", "dt": 0.01, "t_end": 0.02},
      "initial_data": {"family": "taylor_green"},
      "output": {"directory": ")" +
           out_dir.string() + R"(", "every_steps": 1})" + (extra.empty() ? "" : "," + extra) + "}";
}

json first_json_line(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    return json::parse(line);
}

}  // namespace

TEST_CASE("cli: missing subcommand and unknown subcommand are usage errors") {
    CliResult none = run_cli("");
    CHECK(none.code == 1);
    CHECK(first_json_line(none.err).at("error") == "usage");

    CliResult unknown = run_cli("explode");
    CHECK(unknown.code == 1);
    CHECK(first_json_line(unknown.err).at("error") == "usage");

    CliResult no_config = run_cli("run");
    CHECK(no_config.code == 1);
}

TEST_CASE("cli: error taxonomy on the config path") {
    const fs::path dir = scratch_root() / "errors";

    CliResult missing = run_cli("run --config " + (dir / "nope.json").string());
    CHECK(missing.code == 4);
    CHECK(first_json_line(missing.err).at("error") == "io");

    write_file(dir / "broken.json", "{ this is not json");
    CliResult broken = run_cli("run --config " + (dir / "broken.json").string());
    CHECK(broken.code == 2);
    CHECK(first_json_line(broken.err).at("error") == "config");

    const fs::path odd_out = dir / "odd_out";
    write_file(dir / "odd.json", R"({
      "grid": {"N": 15},
      "params": {"epsilon": 1.0},
      "control": {"mode": "fixed_dt", "dt": 0.01, "t_end": 0.02},
      "initial_data": {"family": "taylor_green"},
      "output": {"directory": ")" + odd_out.string() + R"("}})");
    CliResult odd = run_cli("run --config " + (dir / "odd.json").string());
    CHECK(odd.code == 2);
    CHECK_FALSE(fs::exists(odd_out));  // rejected before anything touches the disk

    write_file(dir / "unknown_key.json", R"({
      "grid": {"N": 16},
      "params": {"epsilon": 1.0},
      "control": {"mode": "fixed_dt", "dtt": 0.01, "t_end": 0.02},
      "initial_data": {"family": "taylor_green"}})");
    CliResult unknown = run_cli("run --config " + (dir / "unknown_key.json").string());
    CHECK(unknown.code == 2);
    const json diag = first_json_line(unknown.err);
    CHECK(diag.at("error") == "config");
    CHECK(diag.at("message").get<std::string>().find("control.dtt") != std::string::npos);
}

TEST_CASE("cli run: tiny integration produces a summary and a parsable stream") {
    const fs::path dir = scratch_root() / "tiny";
    write_file(dir / "cfg.json", tiny_run_config(dir / "out"));

    CliResult r = run_cli("run --config " + (dir / "cfg.json").string());
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());  // VB_LOG=quiet silences the info chatter

    const json summary = first_json_line(r.out);
    CHECK(summary.at("n") == 16);
    CHECK(summary.at("epsilon") == 1.0);
    CHECK(summary.at("t_final") == 0.02);
    CHECK(summary.at("records") == 3);
    CHECK(summary.at("checkpoint_path").is_null());
    CHECK(summary.at("q_theta_final").get<double>() == doctest::Approx(1.0).epsilon(1e-10));

    const auto records =
        vb::read_ndjson_file(summary.at("diagnostics_path").get<std::string>());
    REQUIRE(records.size() == 3);
    CHECK(records.front().t == 0.0);
    CHECK(records.back().t == 0.02);
    for (std::size_t i = 1; i < records.size(); ++i) CHECK(records[i].t > records[i - 1].t);

    CliResult loud = run_cli("run --config " + (dir / "cfg.json").string(), "VB_LOG=info");
    CHECK(loud.code == 0);
    CHECK(loud.err.find("[vb]") != std::string::npos);
}

TEST_CASE("cli run: seeded reruns are byte-identical; --seed changes the stream") {
    const fs::path dir = scratch_root() / "seeded";
    const std::string body = R"({
      "grid": {"N": 16},
      "params": {"epsilon": 1.0},
      "control": {"mode": "fixed_dt", "dt": 0.01, "t_end": 0.03},
      "initial_data": {"family": "random_bandlimited", "kmax": 4, "decay": 5.0, "seed": 3},
      "output": {"directory": "PLACEHOLDER", "every_steps": 1}})";

    auto with_dir = [&](const std::string& d) {
        std::string text = body;
        text.replace(text.find("PLACEHOLDER"), std::string("PLACEHOLDER").size(), d);
        return text;
    };
    write_file(dir / "a.json", with_dir((dir / "out_a").string()));
    write_file(dir / "b.json", with_dir((dir / "out_b").string()));
    write_file(dir / "c.json", with_dir((dir / "out_c").string()));

    CliResult a = run_cli("run --config " + (dir / "a.json").string());
    CliResult b = run_cli("run --config " + (dir / "b.json").string());
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(slurp(dir / "out_a" / "diagnostics.ndjson") == slurp(dir / "out_b" / "diagnostics.ndjson"));

    CliResult c = run_cli("run --config " + (dir / "c.json").string() + " --seed 99");
    REQUIRE(c.code == 0);
    CHECK(slurp(dir / "out_a" / "diagnostics.ndjson") != slurp(dir / "out_c" / "diagnostics.ndjson"));
}

TEST_CASE("cli run: --seed is rejected for families without a seed") {
    const fs::path dir = scratch_root() / "seedless";
    write_file(dir / "cfg.json", tiny_run_config(dir / "out"));
    CliResult r = run_cli("run --config " + (dir / "cfg.json").string() + " --seed 7");
    CHECK(r.code == 2);
    CHECK(first_json_line(r.err).at("error") == "config");
}

TEST_CASE("cli run: aborted integration maps to the runtime exit code") {
    const fs::path dir = scratch_root() / "abort";
    write_file(dir / "cfg.json", R"({
      "grid": {"N": 16},
      "params": {"epsilon": 1.0},
      "control": {"mode": "fixed_dt", "dt": 0.01, "t_end": 1.0, "max_steps": 3},
      "initial_data": {"family": "taylor_green"},
      "output": {"directory": ")" + (dir / "out").string() + R"("}})");
    CliResult r = run_cli("run --config " + (dir / "cfg.json").string());
    CHECK(r.code == 3);
    const json diag = first_json_line(r.err);
    CHECK(diag.at("error") == "runtime");
    CHECK(diag.at("message").get<std::string>().find("last good t=") != std::string::npos);
}

TEST_CASE("cli run: checkpoint write and resume") {
    const fs::path dir = scratch_root() / "resume";
    write_file(dir / "first.json", R"({
      "grid": {"N": 16},
      "params": {"epsilon": 1.0},
      "control": {"mode": "fixed_dt", "dt": 0.01, "t_end": 0.02},
      "initial_data": {"family": "taylor_green"},
      "output": {"directory": ")" + (dir / "out_first").string() + R"(",
                 "every_steps": 1, "checkpoint_file": "state.chk"}})");
    CliResult first = run_cli("run --config " + (dir / "first.json").string());
    REQUIRE(first.code == 0);
    const json summary = first_json_line(first.out);
    const std::string chk = summary.at("checkpoint_path").get<std::string>();
    CHECK(fs::exists(chk));

    write_file(dir / "second.json", R"({
      "grid": {"N": 16},
      "params": {"epsilon": 1.0},
      "control": {"mode": "fixed_dt", "dt": 0.01, "t_end": 0.04},
      "initial_data": {"family": "taylor_green"},
      "resume_from": ")" + chk + R"(",
      "output": {"directory": ")" + (dir / "out_second").string() + R"(", "every_steps": 1}})");
    CliResult second = run_cli("run --config " + (dir / "second.json").string());
    REQUIRE(second.code == 0);
    const json summary2 = first_json_line(second.out);
    CHECK(summary2.at("t_final") == 0.04);
    const auto records =
        vb::read_ndjson_file(summary2.at("diagnostics_path").get<std::string>());
    REQUIRE_FALSE(records.empty());
    CHECK(records.front().t == 0.02);  // resumed mid-trajectory
}

TEST_CASE("cli info: config echo plus derived grid quantities") {
    const fs::path dir = scratch_root() / "info";
    write_file(dir / "cfg.json", tiny_run_config(dir / "out"));
    CliResult r = run_cli("info --config " + (dir / "cfg.json").string());
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("grid").at("N") == 16);
    CHECK(doc.at("derived").at("dealias_limit") == 5);
    CHECK(doc.at("derived").at("retained_modes") == 121);
    CHECK(doc.at("derived").at("dt") == 0.01);
}

TEST_CASE("cli oracle-check: agreement suite and seed validation") {
    CliResult ok = run_cli("oracle-check --seeds 2");
    REQUIRE(ok.code == 0);
    const json doc = first_json_line(ok.out);
    CHECK(doc.at("seeds") == 2);
    CHECK(doc.at("pass") == true);
    CHECK(doc.at("max_flux_error").get<double>() < 1e-12);

    CliResult bad = run_cli("oracle-check --seeds 0");
    CHECK(bad.code == 1);
}

TEST_CASE("cli sweep: writes and echoes the convergence report") {
    const fs::path dir = scratch_root() / "sweep";
    write_file(dir / "cfg.json", R"({
      "grid": {"N": 16},
      "params": {"epsilon": 1.0},
      "control": {"mode": "fixed_dt", "dt": 0.02, "t_end": 0.04},
      "initial_data": {"family": "random_bandlimited", "kmax": 4, "decay": 5.0, "seed": 11},
      "output": {"directory": ")" + (dir / "out").string() + R"(", "every_steps": 1},
      "sweep": {"epsilons": [0.1, 0.05]}})");
    CliResult r = run_cli("sweep --config " + (dir / "cfg.json").string() + " --workers 2");
    REQUIRE(r.code == 0);

    const json echoed = first_json_line(r.out);
    const json filed = json::parse(slurp(dir / "out" / "convergence_report.json"));
    CHECK(echoed == filed);
    CHECK(filed.at("epsilons") == json::array({0.1, 0.05}));
    CHECK(filed.at("e_max").size() == 2);
    CHECK(filed.at("rates").size() == 1);
    CHECK(filed.at("pass").is_boolean());
    CHECK(filed.at("time_grid").size() == 3);

    // A config without a sweep section cannot run the subcommand.
    write_file(dir / "plain.json", tiny_run_config(dir / "out_plain"));
    CliResult missing = run_cli("sweep --config " + (dir / "plain.json").string());
    CHECK(missing.code == 2);
}

TEST_CASE("cli regimes: writes one labeled line per cell") {
    const fs::path dir = scratch_root() / "regimes";
    write_file(dir / "cfg.json", R"({
      "grid": {"N": 16},
      "params": {"epsilon": 1.0},
      "control": {"mode": "fixed_dt", "dt": 0.02, "t_end": 0.04},
      "initial_data": {"family": "taylor_green"},
      "output": {"directory": ")" + (dir / "out").string() + R"("},
      "regimes": {"cells": [[1.0, 1.0], [1.5, 0.2]]}})");
    CliResult r = run_cli("regimes --config " + (dir / "cfg.json").string());
    REQUIRE(r.code == 0);

    const json summary = first_json_line(r.out);
    CHECK(summary.at("cells") == 2);
    CHECK(summary.at("completed") == 2);
    CHECK(summary.at("proven") == 1);

    std::istringstream lines(slurp(dir / "out" / "regime_cells.ndjson"));
    std::string line;
    REQUIRE(std::getline(lines, line));
    json cell = json::parse(line);
    CHECK(cell.at("v") == 1);
    CHECK(cell.at("alpha") == 1.0);
    CHECK(cell.at("label") == "proven");
    CHECK(cell.at("completed") == true);
    CHECK(cell.at("bkm_value").is_number());
    CHECK(cell.at("blow_up_time").is_null());
    REQUIRE(std::getline(lines, line));
    cell = json::parse(line);
    CHECK(cell.at("label") == "conjectural");
    REQUIRE_FALSE(std::getline(lines, line));
}
