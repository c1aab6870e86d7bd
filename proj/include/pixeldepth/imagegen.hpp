#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pixeldepth/image.hpp"

namespace pixeldepth {

enum class SeriesKind {
    uniform,
    random_threshold,
    block_insertion,
    line_series,
    rule30_family,
    tiling,
};

const char* to_string(SeriesKind k);
SeriesKind series_kind_from_string(const std::string& s);

// Declarative description of one generated image series. params carries the
// kind-specific knobs (threshold, block_bits, noise_fraction, tile_factor).
struct SeriesSpec {
    SeriesKind kind = SeriesKind::uniform;
    int width = 600;
    int height = 600;
    uint64_t seed = 0;
    int count = 1;
    std::map<std::string, double> params;

    double param(const std::string& key, double fallback) const;
};

/// All pixels equal to value. value must fit depth 1.
Image gen_uniform(int width, int height, uint8_t value);

/// Each pixel independently black with probability threshold.
Image gen_random(int width, int height, uint64_t seed, double threshold);

/// Block-insertion series: seeded density-0.5 noise, image i has its first
/// i*block_bits pixels (row-major) overwritten white. params: block_bits,
/// density (default 0.5).
std::vector<Image> gen_block_series(const SeriesSpec& spec);

/// Line series: image n carries 2n^2 black lines on white, line sets
/// cumulative so ink is monotone in n. Lines are thickness-1 Bresenham
/// segments between two seeded-uniform border points.
std::vector<Image> gen_line_series(const SeriesSpec& spec);

/// Elementary cellular automaton rule 30, single centered seed cell, cyclic
/// boundary; output is steps x width.
Image gen_rule30(int width, int steps);

/// Pixel-wise black union of img with itself rotated 90 degrees clockwise.
Image superpose_rotated(const Image& img);

/// Re-draws exactly round(fraction * area) seeded-random positions uniformly
/// (each chosen pixel becomes white or black with probability 1/2).
Image add_noise(const Image& img, double fraction, uint64_t seed);

/// v -> (2^depth - 1) - v. Involution.
Image invert(const Image& img);

/// factor x factor grid of copies.
Image tile(const Image& img, int factor);

/// Rule-30 calibration family in fixed order:
/// ca, invert(ca), superposed, invert(superposed), noisy, invert(noisy);
/// truncated to spec.count. params: noise_fraction (default 0.5).
std::vector<Image> gen_rule30_family(const SeriesSpec& spec);

/// Materialize any series spec. Returned ids are "<kind>-<index>".
std::vector<Image> generate_series(const SeriesSpec& spec);
std::vector<std::string> series_image_ids(const SeriesSpec& spec);

// imagegen limits
inline constexpr int kMaxImageSide = 1 << 15;
inline constexpr size_t kMaxImageArea = size_t(1) << 30;

} // namespace pixeldepth
