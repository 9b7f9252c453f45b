#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vb/diagnostics.hpp"

namespace vb {

/// One diagnostics record as a single NDJSON line (no trailing newline).
/// Field order is fixed; every floating-point value is printed with %.17g so
/// a reader recovers it bit-exactly. Throws ConstraintViolation on non-finite
/// values (a healthy run never produces them).
std::string record_to_ndjson(const DiagnosticsRecord& record);

/// Parses one NDJSON line. Throws FormatError on malformed JSON, a missing
/// field, or an unsupported schema version.
DiagnosticsRecord record_from_ndjson(const std::string& line);

/// Streams records as NDJSON, enforcing strictly increasing time stamps.
class DiagnosticsWriter {
  public:
    explicit DiagnosticsWriter(std::ostream& out) : out_(&out) {}

    /// Appends one line. Throws ConstraintViolation if record.t does not
    /// strictly exceed the previous record's, IoError if the stream fails.
    void write(const DiagnosticsRecord& record);

    std::size_t lines_written() const { return lines_; }

  private:
    std::ostream* out_;
    std::optional<double> last_t_;
    std::size_t lines_ = 0;
};

/// Reads a whole NDJSON stream (one record per nonempty line).
std::vector<DiagnosticsRecord> read_ndjson(std::istream& in);
std::vector<DiagnosticsRecord> read_ndjson_file(const std::string& path);

}  // namespace vb
