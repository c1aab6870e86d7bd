#pragma once

#include <filesystem>
#include <vector>

#include "pixeldepth/image.hpp"

namespace pixeldepth {

// Minimal PNG importer for photo ingestion (never on the timed path).
// Supports non-interlaced 8-bit grayscale, RGB, RGBA, palette, and 1-bit
// grayscale; output is an 8-bit luminance image (BT.709 weights, rounded).
// Chunk CRCs are verified.
Image read_png_gray(const std::filesystem::path& path);
Image parse_png_gray(const std::vector<uint8_t>& bytes, const std::string& origin = "<memory>");

bool looks_like_png(const std::vector<uint8_t>& bytes);

} // namespace pixeldepth
