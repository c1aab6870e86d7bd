#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pixeldepth/blob.hpp"
#include "pixeldepth/imagegen.hpp"
#include "pixeldepth/timing.hpp"

namespace pixeldepth {

// One experiment end to end: what to generate/ingest, how to compress, how
// to measure, where to write.
struct ExperimentConfig {
    std::string name = "experiment";
    std::vector<SeriesSpec> series;
    std::vector<std::filesystem::path> ingest_paths;
    CodecId codec = CodecId::filtered_deflate;
    bool optimize = true;
    Protocol protocol;
    std::filesystem::path output_dir = "out";
    int ingest_target_size = 600;

    void validate_sources() const; // at least one image source
};

// Plain-text config file: `key = value` lines, `#` comments, repeatable
// [series] and [ingest] sections. Unknown keys inside [series] become
// numeric params of that series.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

} // namespace pixeldepth
