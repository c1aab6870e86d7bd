#pragma once

#include "pixeldepth/blob.hpp"
#include "pixeldepth/image.hpp"

namespace pixeldepth {

inline constexpr const char* kCodecVersion = "pixeldepth-codec-1";

// filtered_deflate pipeline: pack rows to bytes, choose a filter per row,
// serialize scanlines as [filter id][filtered bytes], deflate the stream.
//
// optimize=false uses the minimum-absolute-sum heuristic per row and a
// single mid-effort deflate pass. optimize=true brute-searches: four global
// filter plans (all-none, all-paeth, heuristic, per-row greedy by local
// deflate size) times four zlib strategies at maximum effort, plus the
// non-optimized candidate, keeping the shortest stream. That makes
// optimize=true never larger than optimize=false.
CompressedBlob compress_image(const Image& img, bool optimize);

/// Dispatch on blob.codec_id (toy_rle blobs decode too). The overload with
/// `recovered` reports the per-row filter ids read from the stream, for
/// blobs parsed from disk whose filter_choices field is empty.
Image decompress_image(const CompressedBlob& blob);
Image decompress_image(const CompressedBlob& blob, std::vector<FilterId>* recovered);

/// Compressed size in bits under the given codec; the K_c estimate.
uint64_t k_estimate(const Image& img, CodecId codec, bool optimize = true);

/// compress via either codec
CompressedBlob compress_with(const Image& img, CodecId codec, bool optimize);

} // namespace pixeldepth
