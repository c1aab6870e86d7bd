#pragma once

#include <filesystem>

#include "pixeldepth/analysis.hpp"
#include "pixeldepth/config.hpp"
#include "pixeldepth/image.hpp"

namespace pixeldepth {

struct ImageRecord {
    std::string id;
    uint64_t k_bits = 0;
    double d_mean = 0.0;
    double d_std = 0.0;
};

// Everything cmd_bench produces for one corpus, kept internally consistent:
// the rankings, partition and correlation are all derived from the records.
struct ReportBundle {
    RankedSet k_ranking;
    RankedSet d_ranking;
    GroupPartition partition;
    double correlation = 0.0;
    SessionMetadata session;
    std::vector<ImageRecord> records;
    std::vector<TimingStats> stats;
    std::vector<std::pair<int, double>> stabilization;
    std::vector<std::pair<std::string, std::string>> k_to_d;
};

struct NamedImage {
    std::string id;
    Image image;
};

/// Generate + ingest every source in the config. ids are unique.
std::vector<NamedImage> materialize_corpus(const ExperimentConfig& cfg);

/// Compress, run the timing session, rank, partition, correlate.
ReportBundle run_bench(const std::vector<NamedImage>& corpus, const ExperimentConfig& cfg);

/// results.jsonl, report.json, report.csv and the SVG charts, into dir.
void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir);

std::string bundle_to_json(const ReportBundle& bundle);
std::string bundle_to_csv(const ReportBundle& bundle);

/// Re-rank from the per-image records; used to check report consistency.
RankedSet recompute_d_ranking(const ReportBundle& bundle);

/// manifest.json for generated/ingested image files.
struct ManifestEntry {
    std::string id;
    std::string file;
    std::string origin; // series kind or "ingest"
    std::string params; // key=value summary
    uint64_t seed = 0;
    int width = 0, height = 0;
    uint64_t hash = 0; // content_hash of the pixels
};

void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path);

} // namespace pixeldepth
