#pragma once

#include <filesystem>

#include "pixeldepth/image.hpp"

namespace pixeldepth {

struct IngestOptions {
    int target_size = 600; // square output side; 0 keeps the input geometry
};

struct IngestedImage {
    Image image; // depth 1
    std::string source;
    std::string transform; // human-readable provenance of the normalization
};

/// Grayscale to bilevel: black iff luminance < 128 (mid-gray 128 is white).
Image binarize(const Image& gray);

/// Center-crop to a square, then nearest-neighbour scale to side x side.
Image center_crop_scale(const Image& img, int side);

/// Load a PBM/PGM/PNG file and normalize it: luminance, center-crop to a
/// square, nearest-neighbour scale to target_size, 50% threshold.
IngestedImage ingest_file(const std::filesystem::path& path, const IngestOptions& opts = {});

} // namespace pixeldepth
