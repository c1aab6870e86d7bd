#pragma once

#include <string>
#include <vector>

#include "pixeldepth/analysis.hpp"
#include "pixeldepth/report.hpp"

namespace pixeldepth {

// Canonical controlled experiments, each with its acceptance predicate.
// `reproduce` on the CLI and the acceptance suite share these so a verdict
// means the same thing everywhere. All generation is seeded and the
// predicates are pinned here, not configurable.

struct Verdict {
    std::string test_id;
    bool pass = false;
    std::string summary;             // one line, human-readable
    std::vector<std::string> detail; // supporting numbers
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

// --- canonical corpora -----------------------------------------------------

/// Block-insertion calibration series: 600x600, density 0.5, 100 images,
/// 2000-bit stripes.
SeriesSpec canonical_block_series();

/// Line calibration series: 600x600, 100 images, cumulative random lines.
SeriesSpec canonical_line_series();

/// series 1: random densities, monotone in structure:
/// thresholds 0.2, 0.1, 0.05, 0.02, 0.005 at 600x600.
SeriesSpec canonical_series1();

/// series 2: rule-30 family at 601x601 (ca, superposed, noisy, + inversions).
SeriesSpec canonical_series2();

/// Mixed corpus for the logical-depth signature: uniform, random, rule 30,
/// rule 30 superposed, tiled structure, line-series midpoint.
std::vector<NamedImage> signature_corpus();

// --- experiments ------------------------------------------------------------

/// Toy-codec block-insertion calibration: mean per-image drop in
/// [1900, 2000] bits and linear R^2 >= 0.99.
Verdict run_block_series_toy();

/// Same series under filtered_deflate: negative slope, R^2 >= 0.9.
Verdict run_block_series_png();

/// Uniform and random images at 100^2..900^2: mean decompression time linear
/// in pixel count (R^2 >= 0.9 per family, 30 runs).
Verdict run_size_scaling();

/// Line series: interior maximum of mean D exceeds both endpoints by at
/// least 3 pooled standard errors (rise-then-fall bounded path).
Verdict run_line_series();

/// series-1 stability: two independent 30-run sessions, Spearman rho >= 0.9
/// between D rankings, and the densest/sparsest extremes never swap halves.
Verdict run_series1();

/// series-2 pairing: images and their inversions land in the same partition
/// group; reports the series-2-vs-series-1 spread comparison.
Verdict run_series2();

Verdict run_experiment(const std::string& test_id);
std::vector<std::string> experiment_ids();

} // namespace pixeldepth
