#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pixeldepth/errors.hpp"

namespace pixeldepth {

inline constexpr int kMinEffort = 1;
inline constexpr int kMaxEffort = 9;

// zlib strategy selector for the optimizer's brute search.
enum class DeflateStrategy { standard, filtered, rle, huffman_only };

/// Raw DEFLATE (RFC 1951) stream for data. Effort e in [1, 9] compresses at
/// every level 1..e and keeps the shortest stream, so a higher effort is
/// never longer than a lower one.
std::vector<uint8_t> deflate_compress(std::span<const uint8_t> data, int effort);

/// Single-pass variant used by the optimizer's strategy sweep.
std::vector<uint8_t> deflate_once(std::span<const uint8_t> data, int level, DeflateStrategy s);

/// Inverse of deflate_compress. Throws decode_error (with the input byte
/// offset reached) on malformed or truncated streams. expected_size, when
/// nonzero, preallocates the output and rejects any other decoded size.
std::vector<uint8_t> inflate(std::span<const uint8_t> stream, size_t expected_size = 0);

/// Inflate a zlib-wrapped stream (RFC 1950); used by the PNG reader only.
std::vector<uint8_t> inflate_zlib(std::span<const uint8_t> stream);

const char* zlib_version_string();

} // namespace pixeldepth
