#pragma once

#include <stdexcept>
#include <string>

namespace vb {

/// Invalid user-supplied configuration (bad grid size, unknown key, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation precondition was violated at runtime.
class ConstraintViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integration aborted (non-finite values, step budget exhausted).
/// Carries the last time at which the state was still good.
class NumericsError : public std::runtime_error {
public:
    NumericsError(const std::string& what, double last_good_time)
        : std::runtime_error(what), last_good_time_(last_good_time) {}

    double last_good_time() const noexcept { return last_good_time_; }

private:
    double last_good_time_;
};

/// Malformed on-disk data (checkpoint magic, version, truncation).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure, distinct from malformed content.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vb
