#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pixeldepth/blob.hpp"

namespace pixeldepth {

const char* to_string(FilterId f);

// PNG-style per-row predictive filters over packed row bytes. The predictor
// unit is one byte (bpp = 1 for both 1-bit packed and 8-bit rows), so "left"
// means the previous byte in the row. prev_row must be the same length as
// row; pass an all-zero row for the first image row.

/// output[i] = row[i] - predictor(left, above, upper_left) mod 256.
std::vector<uint8_t> apply_filter(std::span<const uint8_t> row,
                                  std::span<const uint8_t> prev_row, FilterId filter);

/// Exact inverse of apply_filter; prev_row is the reconstructed previous row.
std::vector<uint8_t> unapply_filter(std::span<const uint8_t> filtered,
                                    std::span<const uint8_t> prev_row, FilterId filter);

/// Allocation-free unfilter for the timed decode path: row holds filtered
/// bytes on entry and reconstructed bytes on exit.
void unfilter_in_place(uint8_t* row, const uint8_t* prev_row, size_t n, FilterId filter);

/// Paeth predictor: nearest of left/above/upper-left to left + above - upper_left,
/// ties resolved left, then above, then upper-left.
uint8_t paeth_predict(uint8_t left, uint8_t above, uint8_t upper_left);

/// Standard PNG heuristic: filter minimizing the sum of absolute values of
/// the filtered bytes interpreted as signed deltas.
FilterId choose_filter_heuristic(std::span<const uint8_t> row, std::span<const uint8_t> prev_row);

} // namespace pixeldepth
