#pragma once

#include <stdexcept>
#include <string>

namespace twrsim {

/// Invalid configuration values or parameters.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A recorded exchange whose drift-ratio denominators are unusable.
struct DegenerateRecordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Not enough data points to produce an estimate.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file (configs, logs, tables).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace twrsim
