#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "vb/dynamics.hpp"

namespace vb {

/// A decoded checkpoint: grid size, model parameters, and the full state.
struct CheckpointData {
    int n = 0;
    VoigtParams params;
    State state;
};

/// Serializes a state to the binary checkpoint layout:
/// magic "VBQCHKP1", then little-endian u32 version (= 1), u32 N,
/// f64 epsilon, alpha, beta, t, followed by the vorticity and buoyancy
/// coefficient tables (row-major transform order, interleaved re/im f64).
std::string encode_checkpoint(const State& state, const VoigtParams& params);

/// Parses bytes produced by encode_checkpoint. Throws FormatError on a bad
/// magic, unsupported version, truncation, trailing bytes, or an invalid grid
/// size; with expected_n set, also on a grid-size mismatch.
CheckpointData decode_checkpoint(std::string_view bytes, std::optional<int> expected_n = {});

/// File wrappers around encode/decode. Throw IoError when the file cannot be
/// opened or written.
void save_checkpoint(const std::string& path, const State& state, const VoigtParams& params);
CheckpointData load_checkpoint(const std::string& path, std::optional<int> expected_n = {});

}  // namespace vb
