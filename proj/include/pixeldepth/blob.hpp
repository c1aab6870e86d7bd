#pragma once

#include <cstdint>
#include <vector>

#include "pixeldepth/errors.hpp"

namespace pixeldepth {

enum class CodecId : uint8_t {
    toy_rle = 1,
    filtered_deflate = 2,
};

const char* to_string(CodecId id);
CodecId codec_id_from_string(const std::string& s);

enum class FilterId : uint8_t {
    none = 0,
    sub = 1,
    up = 2,
    average = 3,
    paeth = 4,
};

inline constexpr int kFilterCount = 5;

// Container format "PXD1", version 1, little-endian:
//
//   offset  size  field
//   0       4     magic "PXD1"
//   4       1     container version (1)
//   5       1     codec id
//   6       1     depth (bits per pixel: 1 or 8)
//   7       1     flags (bit 0: stream stores the complemented image)
//   8       4     width  (u32)
//   12      4     height (u32)
//   16      8     payload length in bytes (u64)
//   24      ...   payload
//
// toy_rle payload (bit-packed, MSB-first within each byte):
//   [1 bit first run value][32-bit run count][run lengths...], each length L:
//     L <= 20 : unary, (L-1) one-bits then a zero-bit
//     L >= 21 : 20 one-bits then (L - 21) as 32 bits MSB-first
//   Runs alternate in value, so (bit, count) pairs are implied by the first
//   bit; lengths must sum exactly to width*height.
//
// filtered_deflate payload: a raw DEFLATE (RFC 1951) stream; the decoded
// stream is height scanlines of [1 filter-id byte][packed row bytes] with
// 1-bit pixels packed 8 per byte MSB-first and rows padded to a byte
// boundary. When the complemented flag is set the scanlines encode the
// pixel-inverted image; decoding XOR-masks every reconstructed row (the
// mask pass runs unconditionally so the timed decode path is the same
// either way). The optimizer searches both polarities, which makes the
// compressed length exactly invariant under image inversion.
struct CompressedBlob {
    CodecId codec_id = CodecId::toy_rle;
    std::vector<uint8_t> payload;
    int original_width = 0;
    int original_height = 0;
    int original_depth = 1;
    bool complemented = false; // filtered_deflate: stream holds the inverted image
    // Per-row filter ids, filtered_deflate only. Lives in the deflate stream
    // on disk; kept here for inspection and consistency checks.
    std::vector<FilterId> filter_choices;

    /// Compressed size in bits: payload plus container header. This is the
    /// K_c estimate.
    uint64_t bit_length() const { return 8 * (payload.size() + kHeaderBytes); }

    static constexpr size_t kHeaderBytes = 24;
};

/// Container serialization (the documented byte layout above).
std::vector<uint8_t> serialize_blob(const CompressedBlob& blob);
CompressedBlob parse_blob(const std::vector<uint8_t>& bytes);

} // namespace pixeldepth
