#include "pixeldepth/config.hpp"

#include <fstream>
#include <sstream>

namespace pixeldepth {

void ExperimentConfig::validate_sources() const {
    if (series.empty() && ingest_paths.empty())
        throw parameter_error("config has no image sources (add [series] or [ingest])");
}

namespace {

std::string trim_ws(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw parameter_error("config: boolean expected for " + key + ", got '" + v + "'");
}

double parse_num(const std::string& v, const std::string& key) {
    try {
        size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw parameter_error("config: number expected for " + key + ", got '" + v + "'");
    }
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    enum class Section { top, series, ingest };
    Section section = Section::top;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim_ws(line);
        if (line.empty()) continue;

        auto fail = [&](const std::string& what) -> void {
            throw parameter_error(origin + ":" + std::to_string(line_no) + ": " + what);
        };

        if (line.front() == '[') {
            if (line == "[series]") {
                cfg.series.emplace_back();
                section = Section::series;
            } else if (line == "[ingest]") {
                section = Section::ingest;
            } else {
                fail("unknown section " + line);
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim_ws(line.substr(0, eq));
        const std::string value = trim_ws(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail("empty key or value");

        if (section == Section::ingest) {
            if (key != "path") fail("only `path` is valid inside [ingest]");
            cfg.ingest_paths.emplace_back(value);
            continue;
        }

        if (section == Section::series) {
            SeriesSpec& spec = cfg.series.back();
            if (key == "kind")
                spec.kind = series_kind_from_string(value);
            else if (key == "width")
                spec.width = static_cast<int>(parse_num(value, key));
            else if (key == "height")
                spec.height = static_cast<int>(parse_num(value, key));
            else if (key == "seed")
                spec.seed = static_cast<uint64_t>(parse_num(value, key));
            else if (key == "count")
                spec.count = static_cast<int>(parse_num(value, key));
            else
                spec.params[key] = parse_num(value, key);
            continue;
        }

        if (key == "name")
            cfg.name = value;
        else if (key == "out")
            cfg.output_dir = value;
        else if (key == "codec")
            cfg.codec = codec_id_from_string(value);
        else if (key == "optimize")
            cfg.optimize = parse_bool(value, key);
        else if (key == "runs")
            cfg.protocol.n_runs = static_cast<int>(parse_num(value, key));
        else if (key == "warmup")
            cfg.protocol.warmup_runs = static_cast<int>(parse_num(value, key));
        else if (key == "trim")
            cfg.protocol.trim = parse_num(value, key);
        else if (key == "clear_cache")
            cfg.protocol.clear_cache = parse_bool(value, key);
        else if (key == "cache_scratch")
            cfg.protocol.cache_scratch_bytes = static_cast<size_t>(parse_num(value, key));
        else if (key == "shuffle_seed")
            cfg.protocol.shuffle_seed = static_cast<uint64_t>(parse_num(value, key));
        else if (key == "target_size")
            cfg.ingest_target_size = static_cast<int>(parse_num(value, key));
        else
            fail("unknown key " + key);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw format_error(path.string() + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

} // namespace pixeldepth
