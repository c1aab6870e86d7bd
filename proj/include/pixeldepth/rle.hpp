#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pixeldepth/blob.hpp"
#include "pixeldepth/image.hpp"

namespace pixeldepth {

// Toy run-length codec over the row-major bit string of a depth-1 image.
// Intentionally primitive: maximal runs of equal bits become (bit, count)
// pairs, stored as the payload layout documented in blob.hpp. Its compressed
// size tracks raw information content almost exactly on noise (a length-n
// run of n <= 20 costs exactly n bits) while long uniform runs collapse to
// 52 bits, which is what makes the block-insertion calibration arithmetic
// visible.

CompressedBlob rle_compress(const Image& img);
Image rle_decompress(const CompressedBlob& blob);

/// The (bit, count) pairs of a payload, in order. Decode-side view used by
/// tests and inspection tools.
std::vector<std::pair<uint8_t, uint64_t>> rle_runs(const CompressedBlob& blob);

// run-length code breakpoints (see blob.hpp)
inline constexpr uint64_t kRleUnaryCap = 20;
inline constexpr int kRleEscapeBits = 32;

} // namespace pixeldepth
