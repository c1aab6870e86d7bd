#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "pixeldepth/codec.hpp"
#include "pixeldepth/config.hpp"
#include "pixeldepth/experiments.hpp"
#include "pixeldepth/ingest.hpp"
#include "pixeldepth/pnm.hpp"
#include "pixeldepth/report.hpp"
#include "pixeldepth/rle.hpp"

namespace fs = std::filesystem;
using namespace pixeldepth;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAcceptance = 3;

struct CommonFlags {
    std::string config_path;
    std::string out_override;
    int64_t seed_override = -1;
    int runs_override = 0;
    std::string codec_override;
    bool optimize_set = false;
    bool optimize_value = true;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "experiment config file");
    cmd->add_option("--out", flags.out_override, "output directory (overrides config)");
    cmd->add_option("--seed", flags.seed_override, "series seed (overrides config)");
    cmd->add_option("--runs", flags.runs_override, "timing runs (overrides config)");
    cmd->add_option("--codec", flags.codec_override, "toy_rle | filtered_deflate")
        ->check(CLI::IsMember({"toy_rle", "filtered_deflate"}));
    cmd->add_flag("--optimize,!--no-optimize",
                  [&flags](int64_t count) {
                      flags.optimize_set = true;
                      flags.optimize_value = count > 0;
                  },
                  "brute-search compression (overrides config)");
}

ExperimentConfig resolve_config(const CommonFlags& flags) {
    ExperimentConfig cfg;
    if (!flags.config_path.empty()) cfg = load_config(flags.config_path);
    if (!flags.out_override.empty()) cfg.output_dir = flags.out_override;
    if (flags.seed_override >= 0)
        for (auto& spec : cfg.series) spec.seed = static_cast<uint64_t>(flags.seed_override);
    if (flags.runs_override > 0) cfg.protocol.n_runs = flags.runs_override;
    if (!flags.codec_override.empty()) cfg.codec = codec_id_from_string(flags.codec_override);
    if (flags.optimize_set) cfg.optimize = flags.optimize_value;
    return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw format_error(path.string() + ": cannot open for writing");
    out << text;
}

std::string params_summary(const SeriesSpec& spec) {
    std::string s;
    for (const auto& [k, v] : spec.params) {
        if (!s.empty()) s += " ";
        s += k + "=" + std::to_string(v);
    }
    return s;
}

int cmd_generate(const CommonFlags& flags) {
    ExperimentConfig cfg = resolve_config(flags);
    if (cfg.series.empty()) {
        std::cerr << "generate: config has no [series] sections\n";
        return kExitUsage;
    }
    fs::create_directories(cfg.output_dir);
    std::vector<ManifestEntry> manifest;
    for (const auto& spec : cfg.series) {
        const auto images = generate_series(spec);
        const auto ids = series_image_ids(spec);
        for (size_t i = 0; i < images.size(); ++i) {
            const std::string file = ids[i] + ".pbm";
            write_pnm(images[i], cfg.output_dir / file);
            manifest.push_back({ids[i], file, to_string(spec.kind), params_summary(spec),
                                spec.seed, images[i].width, images[i].height,
                                content_hash(images[i])});
        }
    }
    write_manifest(manifest, cfg.output_dir / "manifest.json");
    std::cout << "generate: wrote " << manifest.size() << " images + manifest.json to "
              << cfg.output_dir.string() << "\n";
    return kExitOk;
}

int cmd_ingest(const CommonFlags& flags, const std::vector<std::string>& paths, int target_size) {
    ExperimentConfig cfg = resolve_config(flags);
    std::vector<fs::path> sources = cfg.ingest_paths;
    for (const auto& p : paths) sources.emplace_back(p);
    if (sources.empty()) {
        std::cerr << "ingest: no input files (give paths or [ingest] config entries)\n";
        return kExitUsage;
    }
    if (target_size > 0) cfg.ingest_target_size = target_size;
    fs::create_directories(cfg.output_dir);

    std::vector<ManifestEntry> manifest;
    for (const auto& src : sources) {
        IngestOptions opts;
        opts.target_size = cfg.ingest_target_size;
        const auto result = ingest_file(src, opts);
        const std::string id = src.stem().string();
        const std::string file = id + ".pbm";
        write_pnm(result.image, cfg.output_dir / file);
        manifest.push_back({id, file, "ingest", result.transform, 0, result.image.width,
                            result.image.height, content_hash(result.image)});
    }
    write_manifest(manifest, cfg.output_dir / "manifest.json");
    std::cout << "ingest: wrote " << manifest.size() << " normalized images to "
              << cfg.output_dir.string() << "\n";
    return kExitOk;
}

int cmd_compress(const CommonFlags& flags, const std::vector<std::string>& paths, bool verify) {
    if (paths.empty()) {
        std::cerr << "compress: no input images\n";
        return kExitUsage;
    }
    ExperimentConfig cfg = resolve_config(flags);
    fs::create_directories(cfg.output_dir);
    for (const auto& p : paths) {
        const Image img = read_pnm(p);
        const auto blob = compress_with(img, cfg.codec, cfg.optimize);
        const auto bytes = serialize_blob(blob);
        const fs::path out = cfg.output_dir / (fs::path(p).stem().string() + ".pxd");
        write_text(out, std::string(bytes.begin(), bytes.end()));
        std::cout << p << " -> " << out.string() << "  " << blob.bit_length() << " bits ("
                  << to_string(cfg.codec) << ")\n";
        if (verify) {
            std::ifstream in(out, std::ios::binary);
            std::vector<uint8_t> readback((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());
            if (decompress_image(parse_blob(readback)) != img)
                throw consistency_error(out.string() + ": round trip mismatch");
            std::cout << "  round trip ok\n";
        }
    }
    return kExitOk;
}

int cmd_bench(const CommonFlags& flags) {
    ExperimentConfig cfg = resolve_config(flags);
    cfg.validate_sources();
    const auto corpus = materialize_corpus(cfg);
    std::cout << "bench: " << corpus.size() << " images, codec " << to_string(cfg.codec)
              << (cfg.optimize ? " (optimized)" : "") << ", " << cfg.protocol.n_runs << " runs\n";
    const auto bundle = run_bench(corpus, cfg);
    write_bundle(bundle, cfg.output_dir);

    std::cout << "  K top: " << bundle.k_ranking.entries.front().image_id << "  D top: "
              << bundle.d_ranking.entries.front().image_id << "\n";
    std::cout << "  groups: " << bundle.partition.groups.size() << ", Spearman rho(K,D) "
              << bundle.correlation << "\n";
    if (!bundle.stabilization.empty()) {
        const auto& last = bundle.stabilization.back();
        std::cout << "  stabilization shift at " << last.first << " runs: " << last.second << "\n";
    }
    std::cout << "  wrote results.jsonl, report.json, report.csv, *.svg to "
              << cfg.output_dir.string() << "\n";
    return kExitOk;
}

int cmd_reproduce(const std::string& test_id, const CommonFlags& flags) {
    std::vector<std::string> ids;
    if (test_id == "all")
        ids = experiment_ids();
    else
        ids.push_back(test_id);

    ExperimentConfig cfg = resolve_config(flags);
    bool all_pass = true;
    for (const auto& id : ids) {
        const Verdict v = run_experiment(id);
        std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << v.test_id << ": " << v.summary << "\n";
        for (const auto& line : v.detail) std::cout << "       " << line << "\n";
        all_pass = all_pass && v.pass;
        if (!flags.out_override.empty()) {
            fs::create_directories(cfg.output_dir);
            std::string text = (v.pass ? "PASS " : "FAIL ") + v.summary + "\n";
            for (const auto& line : v.detail) text += line + "\n";
            write_text(cfg.output_dir / (v.test_id + ".txt"), text);
        }
    }
    return all_pass ? kExitOk : kExitAcceptance;
}

int cmd_report(const std::string& bundle_path, const CommonFlags& flags) {
    std::ifstream in(bundle_path);
    if (!in) {
        std::cerr << "report: cannot open " << bundle_path << "\n";
        return kExitData;
    }
    // re-render CSV and charts from a stored report.json
    ExperimentConfig cfg = resolve_config(flags);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto doc = nlohmann::json::parse(ss.str());

    ReportBundle bundle;
    for (const auto& rec : doc.at("records"))
        bundle.records.push_back({rec.at("id").get<std::string>(), rec.at("k_bits").get<uint64_t>(),
                                  rec.at("d_mean").get<double>(), rec.at("d_std").get<double>()});
    std::vector<std::pair<std::string, double>> k_values, d_values;
    std::vector<TimingStats> stats;
    for (const auto& rec : bundle.records) {
        k_values.emplace_back(rec.id, static_cast<double>(rec.k_bits));
        d_values.emplace_back(rec.id, rec.d_mean);
        TimingStats st;
        st.image_id = rec.id;
        st.mean = rec.d_mean;
        st.std_dev = rec.d_std;
        st.n_runs = 2; // partition only needs the moments
        stats.push_back(st);
    }
    bundle.k_ranking = rank(k_values, Measure::K);
    bundle.d_ranking = rank(d_values, Measure::D);
    bundle.partition = partition_significant(stats);
    bundle.correlation = rank_correlation(bundle.k_ranking, bundle.d_ranking);
    bundle.k_to_d = group_mapping(bundle.k_ranking, bundle.partition);
    bundle.stats = stats;
    for (const auto& s : doc.value("stabilization", nlohmann::json::array()))
        bundle.stabilization.emplace_back(s.at("runs").get<int>(), s.at("max_shift").get<double>());
    bundle.session = make_session_metadata(cfg.protocol);

    write_bundle(bundle, cfg.output_dir);
    std::cout << "report: re-rendered " << bundle.records.size() << " records to "
              << cfg.output_dir.string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pixeldepth: image complexity (compressed length) and logical depth "
                 "(decompression time) toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* generate = app.add_subcommand("generate", "write seeded image series + manifest");
    add_common(generate, flags);

    auto* ingest = app.add_subcommand("ingest", "normalize photos to bilevel 600x600");
    add_common(ingest, flags);
    std::vector<std::string> ingest_paths;
    int ingest_size = 0;
    ingest->add_option("paths", ingest_paths, "input files (PBM/PGM/PNG)");
    ingest->add_option("--size", ingest_size, "target square side (default 600)");

    auto* compress = app.add_subcommand("compress", "compress images to .pxd blobs");
    add_common(compress, flags);
    std::vector<std::string> compress_paths;
    bool verify = false;
    compress->add_option("paths", compress_paths, "input images (PNM)");
    compress->add_flag("--verify", verify, "decompress and compare after writing");

    auto* bench = app.add_subcommand("bench", "full experiment: compress, time, rank, report");
    add_common(bench, flags);

    auto* reproduce = app.add_subcommand("reproduce", "run a canonical controlled experiment");
    add_common(reproduce, flags);
    std::string test_id;
    reproduce
        ->add_option("test_id", test_id,
                     "size_scaling | block_series_toy | block_series_png | line_series | "
                     "series1 | series2 | all")
        ->required();

    auto* report = app.add_subcommand("report", "re-render CSV/SVG from a report.json");
    add_common(report, flags);
    std::string bundle_path;
    report->add_option("bundle", bundle_path, "path to report.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(flags);
        if (ingest->parsed()) return cmd_ingest(flags, ingest_paths, ingest_size);
        if (compress->parsed()) return cmd_compress(flags, compress_paths, verify);
        if (bench->parsed()) return cmd_bench(flags);
        if (reproduce->parsed()) return cmd_reproduce(test_id, flags);
        if (report->parsed()) return cmd_report(bundle_path, flags);
    } catch (const parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dimension_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
