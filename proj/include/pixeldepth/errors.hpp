#pragma once

#include <stdexcept>
#include <string>

namespace pixeldepth {

/// Invalid width/height/geometry.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Out-of-range or inconsistent parameter value.
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Codec does not support the image depth.
struct unsupported_depth_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or truncated compressed payload.
struct decode_error : std::runtime_error {
    explicit decode_error(const std::string& msg, size_t offset = 0)
        : std::runtime_error(msg), byte_offset(offset) {}
    size_t byte_offset;
};

/// Payload decoded but contradicts the recorded geometry.
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unsupported or corrupt file format.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise unusable input data.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pixeldepth
