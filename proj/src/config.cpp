#include "vb/config.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "vb/errors.hpp"

namespace vb {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// =============================================================================
// Initial data families
// =============================================================================

namespace {

void set_sine_pair(SpectralField& f, Wavenumber k, double amplitude) {
    // A sin(k.x): coefficient -iA/2 at +k, +iA/2 at -k.
    f.mode(k.k1, k.k2) = {0.0, -0.5 * amplitude};
    f.mode(-k.k1, -k.k2) = {0.0, 0.5 * amplitude};
}

}  // namespace

State make_initial_data(const InitialData& family, const GridPtr& grid) {
    State state;
    state.omega_hat = SpectralField(grid);
    state.theta_hat = SpectralField(grid);
    state.t = 0.0;
    const int limit = grid->dealias_limit();

    if (const auto* sm = std::get_if<SingleModeData>(&family)) {
        if (sm->k.k1 == 0 && sm->k.k2 == 0)
            throw ConfigError("initial_data.k: single mode must be nonzero");
        if (std::abs(sm->k.k1) > limit || std::abs(sm->k.k2) > limit)
            throw ConfigError("initial_data.k: mode lies outside the dealias mask");
        if (!std::isfinite(sm->amplitude))
            throw ConfigError("initial_data.amplitude: must be finite");
        SpectralField& target =
            (sm->field == SingleModeData::Field::omega) ? state.omega_hat : state.theta_hat;
        set_sine_pair(target, sm->k, sm->amplitude);
    } else if (const auto* tg = std::get_if<TaylorGreenData>(&family)) {
        if (!std::isfinite(tg->amplitude))
            throw ConfigError("initial_data.amplitude: must be finite");
        const double a = tg->amplitude;
        // A sin x1 sin x2: the four corner modes carry -A/4 on k1*k2 > 0
        // and +A/4 on k1*k2 < 0.
        state.omega_hat.mode(1, 1) = {-0.25 * a, 0.0};
        state.omega_hat.mode(-1, -1) = {-0.25 * a, 0.0};
        state.omega_hat.mode(1, -1) = {0.25 * a, 0.0};
        state.omega_hat.mode(-1, 1) = {0.25 * a, 0.0};
        // A cos x1
        state.theta_hat.mode(1, 0) = {0.5 * a, 0.0};
        state.theta_hat.mode(-1, 0) = {0.5 * a, 0.0};
    } else if (const auto* rb = std::get_if<RandomBandlimitedData>(&family)) {
        if (rb->kmax < 1 || rb->kmax > limit)
            throw ConfigError("initial_data.kmax: must lie in [1, N/3]");
        if (!(rb->decay >= 4.0))
            throw ConfigError("initial_data.decay: must be >= 4 (smooth band-limited data)");
        // Split one seed into independent per-field streams.
        std::mt19937_64 split(rb->seed);
        const std::uint64_t omega_seed = split();
        const std::uint64_t theta_seed = split();
        state.omega_hat = random_bandlimited_field(grid, rb->kmax, rb->decay, omega_seed);
        state.omega_hat.mode(0, 0) = {0.0, 0.0};  // vorticity mean vanishes on the torus
        state.theta_hat = random_bandlimited_field(grid, rb->kmax, rb->decay, theta_seed);
    }

    dealias_in_place(state.omega_hat);
    dealias_in_place(state.theta_hat);
    return state;
}

// =============================================================================
// Strict JSON parsing
// =============================================================================

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const json& expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path + ": expected an object");
    return j;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known) fail("unknown key: " + join(path, it.key()));
    }
}

bool has(const json& obj, const char* key) { return obj.contains(key); }

double get_double(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail("missing key: " + join(path, key));
    const json& v = obj.at(key);
    if (!v.is_number()) fail(join(path, key) + ": expected a number");
    return v.get<double>();
}

double get_double_or(const json& obj, const std::string& path, const char* key, double fallback) {
    return obj.contains(key) ? get_double(obj, path, key) : fallback;
}

long get_integer(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail("missing key: " + join(path, key));
    const json& v = obj.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        fail(join(path, key) + ": expected an integer");
    return v.get<long>();
}

long get_integer_or(const json& obj, const std::string& path, const char* key, long fallback) {
    return obj.contains(key) ? get_integer(obj, path, key) : fallback;
}

std::string get_string(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail("missing key: " + join(path, key));
    const json& v = obj.at(key);
    if (!v.is_string()) fail(join(path, key) + ": expected a string");
    return v.get<std::string>();
}

VoigtParams parse_params(const json& j) {
    const json& obj = expect_object(j, "params");
    reject_unknown(obj, "params", {"epsilon", "alpha", "beta"});
    VoigtParams p;
    p.epsilon = get_double(obj, "params", "epsilon");
    p.alpha = get_double_or(obj, "params", "alpha", 1.0);
    p.beta = get_double_or(obj, "params", "beta", 1.0);
    return p;
}

StepControl parse_control(const json& j, const json* output_obj) {
    const json& obj = expect_object(j, "control");
    reject_unknown(obj, "control", {"mode", "dt", "cfl", "dt_max", "t_end", "max_steps"});

    StepControl c;
    const std::string mode = get_string(obj, "control", "mode");
    if (mode == "fixed_dt") {
        c.mode = StepControl::Mode::fixed_dt;
        c.dt = get_double(obj, "control", "dt");
        if (has(obj, "cfl")) fail("control.cfl: only valid in cfl mode");
        if (has(obj, "dt_max")) fail("control.dt_max: only valid in cfl mode");
    } else if (mode == "cfl") {
        c.mode = StepControl::Mode::cfl;
        c.cfl = get_double_or(obj, "control", "cfl", 0.4);
        c.dt_max = get_double_or(obj, "control", "dt_max", 1e-2);
        if (has(obj, "dt")) fail("control.dt: only valid in fixed_dt mode");
    } else {
        fail("control.mode: expected \"fixed_dt\" or \"cfl\"");
    }
    c.t_end = get_double(obj, "control", "t_end");
    c.max_steps = get_integer_or(obj, "control", "max_steps", 1'000'000);

    if (output_obj != nullptr) {
        const json& out = *output_obj;
        const bool steps_given = has(out, "every_steps");
        const bool dt_given = has(out, "every_dt");
        if (steps_given && dt_given) fail("output: set either every_steps or every_dt, not both");
        if (dt_given) {
            c.observe_every_dt = get_double(out, "output", "every_dt");
            if (!(c.observe_every_dt > 0.0)) fail("output.every_dt: must be positive");
        } else {
            c.observe_every_steps =
                static_cast<int>(get_integer_or(out, "output", "every_steps", 10));
        }
    }
    return c;
}

InitialData parse_initial(const json& j) {
    const json& obj = expect_object(j, "initial_data");
    const std::string family = get_string(obj, "initial_data", "family");
    if (family == "single_mode") {
        reject_unknown(obj, "initial_data", {"family", "k", "amplitude", "field"});
        SingleModeData d;
        if (!obj.contains("k")) fail("missing key: initial_data.k");
        const json& k = obj.at("k");
        if (!k.is_array() || k.size() != 2 || !k[0].is_number_integer() ||
            !k[1].is_number_integer())
            fail("initial_data.k: expected [k1, k2] integers");
        d.k = {k[0].get<int>(), k[1].get<int>()};
        d.amplitude = get_double_or(obj, "initial_data", "amplitude", 1.0);
        const std::string field = get_string(obj, "initial_data", "field");
        if (field == "omega")
            d.field = SingleModeData::Field::omega;
        else if (field == "theta")
            d.field = SingleModeData::Field::theta;
        else
            fail("initial_data.field: expected \"omega\" or \"theta\"");
        return d;
    }
    if (family == "taylor_green") {
        reject_unknown(obj, "initial_data", {"family", "amplitude"});
        TaylorGreenData d;
        d.amplitude = get_double_or(obj, "initial_data", "amplitude", 1.0);
        return d;
    }
    if (family == "random_bandlimited") {
        reject_unknown(obj, "initial_data", {"family", "kmax", "decay", "seed"});
        RandomBandlimitedData d;
        d.kmax = static_cast<int>(get_integer(obj, "initial_data", "kmax"));
        d.decay = get_double(obj, "initial_data", "decay");
        if (!obj.contains("seed")) fail("missing key: initial_data.seed");
        const json& seed = obj.at("seed");
        if (!seed.is_number_integer() && !seed.is_number_unsigned())
            fail("initial_data.seed: expected an unsigned integer");
        d.seed = seed.get<std::uint64_t>();
        return d;
    }
    fail("initial_data.family: unknown family \"" + family + "\"");
}

OutputConfig parse_output(const json& j) {
    const json& obj = expect_object(j, "output");
    reject_unknown(obj, "output",
                   {"directory", "diagnostics_file", "checkpoint_file", "checkpoint_every_steps",
                    "every_steps", "every_dt"});
    OutputConfig o;
    if (has(obj, "directory")) o.directory = get_string(obj, "output", "directory");
    if (has(obj, "diagnostics_file"))
        o.diagnostics_file = get_string(obj, "output", "diagnostics_file");
    if (has(obj, "checkpoint_file")) o.checkpoint_file = get_string(obj, "output", "checkpoint_file");
    o.checkpoint_every_steps =
        static_cast<int>(get_integer_or(obj, "output", "checkpoint_every_steps", 0));
    return o;
}

}  // namespace

void SolverConfig::validate() const {
    if (n < 8 || n % 2 != 0) throw ConfigError("grid.N: must be even and >= 8");
    params.validate();
    control.validate();

    // Re-run the family checks without building fields.
    const int limit = n / 3;
    if (const auto* sm = std::get_if<SingleModeData>(&initial)) {
        if (sm->k.k1 == 0 && sm->k.k2 == 0)
            throw ConfigError("initial_data.k: single mode must be nonzero");
        if (std::abs(sm->k.k1) > limit || std::abs(sm->k.k2) > limit)
            throw ConfigError("initial_data.k: mode lies outside the dealias mask");
        if (!std::isfinite(sm->amplitude)) throw ConfigError("initial_data.amplitude: must be finite");
    } else if (const auto* tg = std::get_if<TaylorGreenData>(&initial)) {
        if (!std::isfinite(tg->amplitude)) throw ConfigError("initial_data.amplitude: must be finite");
    } else if (const auto* rb = std::get_if<RandomBandlimitedData>(&initial)) {
        if (rb->kmax < 1 || rb->kmax > limit) throw ConfigError("initial_data.kmax: must lie in [1, N/3]");
        if (!(rb->decay >= 4.0))
            throw ConfigError("initial_data.decay: must be >= 4 (smooth band-limited data)");
    }

    for (double s : sobolev_s)
        if (!std::isfinite(s)) throw ConfigError("diagnostics.sobolev_s: entries must be finite");
    if (output.directory.empty()) throw ConfigError("output.directory: must not be empty");
    if (output.diagnostics_file.empty())
        throw ConfigError("output.diagnostics_file: must not be empty");
    if (output.checkpoint_every_steps < 0)
        throw ConfigError("output.checkpoint_every_steps: must be >= 0");
    if (output.checkpoint_every_steps > 0 && output.checkpoint_file.empty())
        throw ConfigError("output.checkpoint_every_steps: requires output.checkpoint_file");

    if (sweep) {
        if (sweep->epsilons.empty()) throw ConfigError("sweep.epsilons: must not be empty");
        for (std::size_t i = 0; i < sweep->epsilons.size(); ++i) {
            if (!(sweep->epsilons[i] > 0.0)) throw ConfigError("sweep.epsilons: must be positive");
            if (i > 0 && !(sweep->epsilons[i] < sweep->epsilons[i - 1]))
                throw ConfigError("sweep.epsilons: must be strictly decreasing");
        }
        if (control.mode != StepControl::Mode::fixed_dt)
            throw ConfigError("sweep: requires control.mode = fixed_dt (shared time grid)");
    }
    if (regimes) {
        if (regimes->cells.empty()) throw ConfigError("regimes.cells: must not be empty");
        for (const auto& [alpha, beta] : regimes->cells)
            if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
                throw ConfigError("regimes.cells: alpha and beta must be finite and >= 0");
        if (!(regimes->sobolev_s > 1.0))
            throw ConfigError("regimes.sobolev_s: must exceed 1");
    }
}

SolverConfig parse_config(const std::string& json_text, const std::string& source) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError(source + ": top level must be an object");
    reject_unknown(root, "",
                   {"grid", "params", "control", "initial_data", "output", "diagnostics",
                    "resume_from", "sweep", "regimes"});
    for (const char* required : {"grid", "params", "control", "initial_data"})
        if (!root.contains(required)) fail(std::string("missing key: ") + required);

    SolverConfig cfg;

    const json& grid_obj = expect_object(root.at("grid"), "grid");
    reject_unknown(grid_obj, "grid", {"N"});
    cfg.n = static_cast<int>(get_integer(grid_obj, "grid", "N"));

    cfg.params = parse_params(root.at("params"));

    const json* output_obj = nullptr;
    if (root.contains("output")) {
        cfg.output = parse_output(root.at("output"));
        output_obj = &root.at("output");
    }
    cfg.control = parse_control(root.at("control"), output_obj);
    cfg.initial = parse_initial(root.at("initial_data"));

    if (root.contains("diagnostics")) {
        const json& d = expect_object(root.at("diagnostics"), "diagnostics");
        reject_unknown(d, "diagnostics", {"sobolev_s"});
        if (d.contains("sobolev_s")) {
            const json& list = d.at("sobolev_s");
            if (!list.is_array()) fail("diagnostics.sobolev_s: expected an array");
            cfg.sobolev_s.clear();
            for (const auto& v : list) {
                if (!v.is_number()) fail("diagnostics.sobolev_s: entries must be numbers");
                cfg.sobolev_s.push_back(v.get<double>());
            }
        }
    }

    if (root.contains("resume_from")) {
        const json& v = root.at("resume_from");
        if (!v.is_string()) fail("resume_from: expected a string path");
        cfg.resume_from = v.get<std::string>();
    }

    if (root.contains("sweep")) {
        const json& s = expect_object(root.at("sweep"), "sweep");
        reject_unknown(s, "sweep", {"epsilons"});
        if (!s.contains("epsilons")) fail("missing key: sweep.epsilons");
        const json& eps = s.at("epsilons");
        if (!eps.is_array()) fail("sweep.epsilons: expected an array");
        SweepConfig sw;
        for (const auto& v : eps) {
            if (!v.is_number()) fail("sweep.epsilons: entries must be numbers");
            sw.epsilons.push_back(v.get<double>());
        }
        cfg.sweep = sw;
    }

    if (root.contains("regimes")) {
        const json& r = expect_object(root.at("regimes"), "regimes");
        reject_unknown(r, "regimes", {"cells", "sobolev_s"});
        if (!r.contains("cells")) fail("missing key: regimes.cells");
        const json& cells = r.at("cells");
        if (!cells.is_array()) fail("regimes.cells: expected an array of [alpha, beta] pairs");
        RegimesConfig rg;
        for (const auto& cell : cells) {
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
                fail("regimes.cells: expected [alpha, beta] number pairs");
            rg.cells.emplace_back(cell[0].get<double>(), cell[1].get<double>());
        }
        rg.sobolev_s = get_double_or(r, "regimes", "sobolev_s", 2.0);
        cfg.regimes = rg;
    }

    cfg.validate();
    return cfg;
}

SolverConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

std::string config_to_json(const SolverConfig& config) {
    ordered_json root;
    root["grid"] = {{"N", config.n}};
    root["params"] = ordered_json{{"epsilon", config.params.epsilon},
                                  {"alpha", config.params.alpha},
                                  {"beta", config.params.beta}};

    ordered_json control;
    if (config.control.mode == StepControl::Mode::fixed_dt) {
        control["mode"] = "fixed_dt";
        control["dt"] = config.control.dt;
    } else {
        control["mode"] = "cfl";
        control["cfl"] = config.control.cfl;
        control["dt_max"] = config.control.dt_max;
    }
    control["t_end"] = config.control.t_end;
    control["max_steps"] = config.control.max_steps;
    root["control"] = control;

    ordered_json initial;
    if (const auto* sm = std::get_if<SingleModeData>(&config.initial)) {
        initial["family"] = "single_mode";
        initial["k"] = {sm->k.k1, sm->k.k2};
        initial["amplitude"] = sm->amplitude;
        initial["field"] = (sm->field == SingleModeData::Field::omega) ? "omega" : "theta";
    } else if (const auto* tg = std::get_if<TaylorGreenData>(&config.initial)) {
        initial["family"] = "taylor_green";
        initial["amplitude"] = tg->amplitude;
    } else if (const auto* rb = std::get_if<RandomBandlimitedData>(&config.initial)) {
        initial["family"] = "random_bandlimited";
        initial["kmax"] = rb->kmax;
        initial["decay"] = rb->decay;
        initial["seed"] = rb->seed;
    }
    root["initial_data"] = initial;

    ordered_json output;
    output["directory"] = config.output.directory;
    output["diagnostics_file"] = config.output.diagnostics_file;
    if (!config.output.checkpoint_file.empty()) {
        output["checkpoint_file"] = config.output.checkpoint_file;
        output["checkpoint_every_steps"] = config.output.checkpoint_every_steps;
    }
    if (config.control.observe_every_dt > 0.0)
        output["every_dt"] = config.control.observe_every_dt;
    else
        output["every_steps"] = config.control.observe_every_steps;
    root["output"] = output;

    root["diagnostics"] = ordered_json{{"sobolev_s", config.sobolev_s}};
    if (config.resume_from) root["resume_from"] = *config.resume_from;
    if (config.sweep) root["sweep"] = ordered_json{{"epsilons", config.sweep->epsilons}};
    if (config.regimes) {
        ordered_json cells = ordered_json::array();
        for (const auto& [alpha, beta] : config.regimes->cells) cells.push_back({alpha, beta});
        root["regimes"] = ordered_json{{"cells", cells}, {"sobolev_s", config.regimes->sobolev_s}};
    }
    return root.dump(2);
}

}  // namespace vb
