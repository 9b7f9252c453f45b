#include "vb/diag_writer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "vb/errors.hpp"

namespace vb {

namespace {

void append_double(std::string& out, double v) {
    if (!std::isfinite(v)) throw ConstraintViolation("diagnostics value is not finite");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

void append_scalar_field(std::string& out, const char* name, double v) {
    out += ",\"";
    out += name;
    out += "\":";
    append_double(out, v);
}

void append_array_field(std::string& out, const char* name, const std::vector<double>& values) {
    out += ",\"";
    out += name;
    out += "\":[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        append_double(out, values[i]);
    }
    out += ']';
}

double field_double(const nlohmann::json& obj, const char* key) {
    if (!obj.contains(key)) throw FormatError(std::string("diagnostics line missing \"") + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw FormatError(std::string("diagnostics field \"") + key + "\" is not a number");
    return v.get<double>();
}

std::vector<double> field_array(const nlohmann::json& obj, const char* key) {
    if (!obj.contains(key)) throw FormatError(std::string("diagnostics line missing \"") + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_array()) throw FormatError(std::string("diagnostics field \"") + key + "\" is not an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number()) throw FormatError(std::string("diagnostics field \"") + key + "\" has a non-number entry");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

std::string record_to_ndjson(const DiagnosticsRecord& record) {
    std::string out = "{\"v\":1,\"t\":";
    append_double(out, record.t);
    append_scalar_field(out, "l2_omega", record.l2_omega);
    append_scalar_field(out, "l2_theta", record.l2_theta);
    append_scalar_field(out, "h_half_omega", record.h_half_omega);
    append_scalar_field(out, "h_half_theta", record.h_half_theta);
    append_scalar_field(out, "q_theta", record.q_theta);
    append_scalar_field(out, "q_omega", record.q_omega);
    append_scalar_field(out, "frac_q_theta", record.frac_q_theta);
    append_scalar_field(out, "frac_q_omega", record.frac_q_omega);
    append_scalar_field(out, "max_omega", record.max_omega);
    append_scalar_field(out, "max_theta", record.max_theta);
    append_scalar_field(out, "max_u", record.max_u);
    append_scalar_field(out, "bkm_integral", record.bkm_integral);
    append_scalar_field(out, "bound_slack", record.bound_slack);
    append_array_field(out, "hs_omega", record.hs_omega);
    append_array_field(out, "hs_theta", record.hs_theta);
    out += '}';
    return out;
}

DiagnosticsRecord record_from_ndjson(const std::string& line) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("diagnostics line is not valid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw FormatError("diagnostics line is not a JSON object");
    if (!obj.contains("v") || !obj.at("v").is_number_integer() || obj.at("v").get<int>() != 1)
        throw FormatError("diagnostics line has an unsupported schema version");

    DiagnosticsRecord rec;
    rec.t = field_double(obj, "t");
    rec.l2_omega = field_double(obj, "l2_omega");
    rec.l2_theta = field_double(obj, "l2_theta");
    rec.h_half_omega = field_double(obj, "h_half_omega");
    rec.h_half_theta = field_double(obj, "h_half_theta");
    rec.q_theta = field_double(obj, "q_theta");
    rec.q_omega = field_double(obj, "q_omega");
    rec.frac_q_theta = field_double(obj, "frac_q_theta");
    rec.frac_q_omega = field_double(obj, "frac_q_omega");
    rec.max_omega = field_double(obj, "max_omega");
    rec.max_theta = field_double(obj, "max_theta");
    rec.max_u = field_double(obj, "max_u");
    rec.bkm_integral = field_double(obj, "bkm_integral");
    rec.bound_slack = field_double(obj, "bound_slack");
    rec.hs_omega = field_array(obj, "hs_omega");
    rec.hs_theta = field_array(obj, "hs_theta");
    return rec;
}

void DiagnosticsWriter::write(const DiagnosticsRecord& record) {
    if (last_t_ && !(record.t > *last_t_))
        throw ConstraintViolation("diagnostics records must have strictly increasing t");
    const std::string line = record_to_ndjson(record);
    (*out_) << line << '\n';
    if (!*out_) throw IoError("failed writing diagnostics stream");
    last_t_ = record.t;
    ++lines_;
}

std::vector<DiagnosticsRecord> read_ndjson(std::istream& in) {
    std::vector<DiagnosticsRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_ndjson(line));
    }
    return records;
}

std::vector<DiagnosticsRecord> read_ndjson_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open diagnostics file: " + path);
    return read_ndjson(in);
}

}  // namespace vb
