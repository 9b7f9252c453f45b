#include "vb/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "vb/errors.hpp"

namespace vb {

namespace {

constexpr char kMagic[8] = {'V', 'B', 'Q', 'C', 'H', 'K', 'P', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Cursor {
  public:
    explicit Cursor(std::string_view bytes) : bytes_(bytes) {}

    std::uint32_t take_u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }

    double take_f64(const char* what) {
        need(8, what);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
                    << (8 * i);
        pos_ += 8;
        return std::bit_cast<double>(bits);
    }

    void take_raw(char* dst, std::size_t count, const char* what) {
        need(count, what);
        std::memcpy(dst, bytes_.data() + pos_, count);
        pos_ += count;
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

  private:
    void need(std::size_t count, const char* what) const {
        if (bytes_.size() - pos_ < count)
            throw FormatError(std::string("checkpoint truncated while reading ") + what);
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

void put_field(std::string& out, const SpectralField& f) {
    for (const auto& c : f.coeffs) {
        put_f64(out, c.real());
        put_f64(out, c.imag());
    }
}

void take_field(Cursor& cur, SpectralField& f, const char* what) {
    for (auto& c : f.coeffs) {
        const double re = cur.take_f64(what);
        const double im = cur.take_f64(what);
        c = {re, im};
    }
}

}  // namespace

std::string encode_checkpoint(const State& state, const VoigtParams& params) {
    require_same_grid(state.omega_hat, state.theta_hat, "encode_checkpoint");
    const int n = state.omega_hat.grid->size();

    std::string out;
    out.reserve(8 + 4 + 4 + 4 * 8 + 2 * static_cast<std::size_t>(n) * n * 16);
    out.append(kMagic, sizeof(kMagic));
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(n));
    put_f64(out, params.epsilon);
    put_f64(out, params.alpha);
    put_f64(out, params.beta);
    put_f64(out, state.t);
    put_field(out, state.omega_hat);
    put_field(out, state.theta_hat);
    return out;
}

CheckpointData decode_checkpoint(std::string_view bytes, std::optional<int> expected_n) {
    Cursor cur(bytes);

    char magic[8];
    cur.take_raw(magic, sizeof(magic), "magic");
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw FormatError("checkpoint magic mismatch: not a checkpoint file");

    const std::uint32_t version = cur.take_u32("version");
    if (version != kVersion)
        throw FormatError("unsupported checkpoint version " + std::to_string(version));

    const std::uint32_t n_raw = cur.take_u32("grid size");
    if (n_raw < 8 || n_raw > 1u << 16 || n_raw % 2 != 0)
        throw FormatError("checkpoint grid size invalid: " + std::to_string(n_raw));
    const int n = static_cast<int>(n_raw);
    if (expected_n && *expected_n != n)
        throw FormatError("checkpoint grid mismatch: file has N=" + std::to_string(n) +
                          ", expected N=" + std::to_string(*expected_n));

    CheckpointData data;
    data.n = n;
    data.params.epsilon = cur.take_f64("epsilon");
    data.params.alpha = cur.take_f64("alpha");
    data.params.beta = cur.take_f64("beta");
    try {
        data.params.validate();
    } catch (const ConfigError& e) {
        throw FormatError(std::string("checkpoint parameters invalid: ") + e.what());
    }

    auto grid = make_grid(n);
    data.state.omega_hat = SpectralField(grid);
    data.state.theta_hat = SpectralField(grid);
    data.state.t = cur.take_f64("time");
    take_field(cur, data.state.omega_hat, "vorticity table");
    take_field(cur, data.state.theta_hat, "buoyancy table");

    if (cur.remaining() != 0)
        throw FormatError("checkpoint has " + std::to_string(cur.remaining()) +
                          " trailing bytes");
    return data;
}

void save_checkpoint(const std::string& path, const State& state, const VoigtParams& params) {
    const std::string bytes = encode_checkpoint(state, params);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open checkpoint for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("failed writing checkpoint: " + path);
}

CheckpointData load_checkpoint(const std::string& path, std::optional<int> expected_n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint for reading: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("failed reading checkpoint: " + path);
    return decode_checkpoint(buffer.str(), expected_n);
}

}  // namespace vb
