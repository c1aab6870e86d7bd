#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pixeldepth/errors.hpp"

namespace pixeldepth {

// Pixel value convention: 0 is white, (2^depth - 1) is black ink.
inline constexpr uint8_t kWhite = 0;
inline constexpr uint8_t kBlack = 1;

// Rectangular pixel grid, row-major, one byte per pixel regardless of depth.
// depth is the nominal bits per pixel (1 for bilevel, 8 for grayscale) and
// bounds the legal value range.
struct Image {
    int width = 0;
    int height = 0;
    int depth = 1;
    std::vector<uint8_t> pixels;

    Image() = default;
    Image(int w, int h, int d, uint8_t fill = 0);

    size_t area() const { return static_cast<size_t>(width) * static_cast<size_t>(height); }
    uint8_t max_value() const { return static_cast<uint8_t>((1u << depth) - 1); }

    uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    void set(int x, int y, uint8_t v) { pixels[static_cast<size_t>(y) * width + x] = v; }

    size_t ink() const; // number of non-white pixels

    bool operator==(const Image&) const = default;
};

/// Throws dimension_error / parameter_error if the struct breaks an invariant.
void validate(const Image& img);

/// Bytes per packed row: 1-bit pixels are packed 8 per byte, MSB first;
/// 8-bit pixels are one byte each.
size_t packed_row_bytes(int width, int depth);

/// Pack one row of pixels into bytes (MSB-first for depth 1).
void pack_row(const Image& img, int y, uint8_t* out);

/// Inverse of pack_row.
void unpack_row(Image& img, int y, const uint8_t* in);

/// FNV-1a over geometry and pixel bytes; used for manifests and integrity
/// checks outside timed regions.
uint64_t content_hash(const Image& img);

std::string to_string(const Image& img); // small ASCII debug rendering

} // namespace pixeldepth
