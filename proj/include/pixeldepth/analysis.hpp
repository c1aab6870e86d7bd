#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pixeldepth/timing.hpp"

namespace pixeldepth {

enum class Measure { K, D };

struct RankEntry {
    std::string image_id;
    double value = 0.0;
    int rank = 0; // 1-based, descending by value
    bool tied = false;
};

// Images ordered from most to least complex under one measure. Ties broken
// by lexicographic image id; tied entries keep distinct ranks but are
// flagged.
struct RankedSet {
    Measure measure = Measure::K;
    std::vector<RankEntry> entries;

    const RankEntry* find(const std::string& id) const;
};

struct Group {
    std::string label; // "A", "B", ... in descending-depth order
    std::vector<std::string> members;
    double mean = 0.0;
    double std_dev = 0.0;
    int pooled_n = 0;
};

// Ordered partition with pairwise non-overlapping mean +- std intervals.
struct GroupPartition {
    std::vector<Group> groups;

    int group_of(const std::string& id) const; // -1 when absent
};

// rows: codecs, columns: images; cell (i, j) = decompression time of image j
// under codec i.
struct DepthMatrix {
    std::vector<std::string> codec_ids;
    std::vector<std::string> image_ids;
    std::vector<std::vector<double>> cells;
};

struct AggregateOrder {
    // pairs (h, k): image h strictly deeper than image k under every codec
    std::vector<std::pair<size_t, size_t>> partial_order;
    // image indices sorted by descending harmonic-mean depth
    std::vector<size_t> total_order;
    std::vector<double> harmonic_means;
};

struct JumpSelection {
    std::vector<size_t> indices; // strictly increasing series indices
    bool degenerate = false;     // fewer than k sigma-separated bins exist
    double pooled_sigma = 0.0;
    double min_gap = 0.0; // minimum pairwise |D| difference achieved
};

/// Rank by value descending; ties reported per the documented tie-break.
RankedSet rank(const std::vector<std::pair<std::string, double>>& values, Measure measure);

/// Greedy descending scan grouping stats whose mean +- std intervals overlap,
/// merging until every pair of groups satisfies the non-overlap criterion
/// (mean_i - std_i) > (mean_j + std_j) for i above j.
GroupPartition partition_significant(const std::vector<TimingStats>& stats);

/// k series elements maximizing the minimum pairwise depth difference,
/// flagged degenerate when fewer than k bins separated by the pooled sigma
/// exist.
JumpSelection select_jumps(const std::vector<TimingStats>& series, int k);

/// Spearman rank correlation with midrank tie correction, in [-1, 1].
double rank_correlation(const RankedSet& r1, const RankedSet& r2);

/// Cross-measure mapping: for every image, its rank under `from` and its
/// group label under the partition of `to`.
std::vector<std::pair<std::string, std::string>> group_mapping(const RankedSet& from,
                                                               const GroupPartition& to);

/// Harmonic-mean total order plus the all-codecs partial order. All cells
/// must be > 0.
AggregateOrder aggregate_depth(const DepthMatrix& matrix);

struct SeriesStd {
    std::string series;
    double pooled_std = 0.0;
};

/// Per-series pooled standard deviation, sorted descending.
std::vector<SeriesStd> stats_summary(
    const std::vector<std::pair<std::string, std::vector<TimingStats>>>& by_series);

} // namespace pixeldepth
