#pragma once

#include <filesystem>
#include <string>

#include "pixeldepth/image.hpp"

namespace pixeldepth {

// Portable anymap I/O. Bilevel images use PBM (P1 plain / P4 raw, 1 = black,
// matching the in-memory ink convention); grayscale uses PGM (P2 / P5,
// maxval 255). Raw variants are written by default.

Image read_pnm(const std::filesystem::path& path);
Image parse_pnm(const std::vector<uint8_t>& bytes, const std::string& origin = "<memory>");

void write_pbm(const Image& img, const std::filesystem::path& path, bool raw = true);
void write_pgm(const Image& img, const std::filesystem::path& path, bool raw = true);

/// PBM for depth 1, PGM for depth 8.
void write_pnm(const Image& img, const std::filesystem::path& path, bool raw = true);

} // namespace pixeldepth
