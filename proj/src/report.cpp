#include "pixeldepth/report.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pixeldepth/codec.hpp"
#include "pixeldepth/ingest.hpp"
#include "pixeldepth/rng.hpp"
#include "pixeldepth/svg.hpp"

namespace pixeldepth {

std::vector<NamedImage> materialize_corpus(const ExperimentConfig& cfg) {
    cfg.validate_sources();
    std::vector<NamedImage> corpus;
    std::set<std::string> used;

    auto unique_id = [&used](std::string id) {
        std::string candidate = id;
        int suffix = 2;
        while (!used.insert(candidate).second)
            candidate = id + "_" + std::to_string(suffix++);
        return candidate;
    };

    for (const auto& spec : cfg.series) {
        auto images = generate_series(spec);
        auto ids = series_image_ids(spec);
        for (size_t i = 0; i < images.size(); ++i)
            corpus.push_back({unique_id(ids[i]), std::move(images[i])});
    }
    for (const auto& path : cfg.ingest_paths) {
        IngestOptions opts;
        opts.target_size = cfg.ingest_target_size;
        auto ingested = ingest_file(path, opts);
        corpus.push_back({unique_id(path.stem().string()), std::move(ingested.image)});
    }
    return corpus;
}

ReportBundle run_bench(const std::vector<NamedImage>& corpus, const ExperimentConfig& cfg) {
    if (corpus.empty()) throw parameter_error("bench needs at least one image");

    ReportBundle bundle;
    bundle.session = make_session_metadata(cfg.protocol);

    std::vector<CompressedBlob> blobs;
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, double>> k_values;
    blobs.reserve(corpus.size());
    for (const auto& [id, image] : corpus) {
        blobs.push_back(compress_with(image, cfg.codec, cfg.optimize));
        ids.push_back(id);
        k_values.emplace_back(id, static_cast<double>(blobs.back().bit_length()));
    }

    std::vector<TimingSample> samples;
    bundle.stats = run_session(blobs, ids, cfg.protocol, &samples);
    bundle.stabilization = stabilization_curve(samples);

    std::vector<std::pair<std::string, double>> d_values;
    for (const auto& st : bundle.stats) d_values.emplace_back(st.image_id, st.mean);

    bundle.k_ranking = rank(k_values, Measure::K);
    bundle.d_ranking = rank(d_values, Measure::D);
    bundle.partition = partition_significant(bundle.stats);
    bundle.correlation = rank_correlation(bundle.k_ranking, bundle.d_ranking);
    bundle.k_to_d = group_mapping(bundle.k_ranking, bundle.partition);

    for (size_t i = 0; i < corpus.size(); ++i) {
        ImageRecord rec;
        rec.id = ids[i];
        rec.k_bits = blobs[i].bit_length();
        rec.d_mean = bundle.stats[i].mean;
        rec.d_std = bundle.stats[i].std_dev;
        bundle.records.push_back(rec);
    }
    return bundle;
}

RankedSet recompute_d_ranking(const ReportBundle& bundle) {
    std::vector<std::pair<std::string, double>> values;
    for (const auto& rec : bundle.records) values.emplace_back(rec.id, rec.d_mean);
    return rank(values, Measure::D);
}

namespace {

nlohmann::json ranking_json(const RankedSet& set) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : set.entries)
        arr.push_back({{"image_id", e.image_id},
                       {"value", e.value},
                       {"rank", e.rank},
                       {"tied", e.tied}});
    return arr;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw format_error(path.string() + ": cannot open for writing");
    out << text;
    if (!out) throw format_error(path.string() + ": write failed");
}

} // namespace

std::string bundle_to_json(const ReportBundle& bundle) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : bundle.partition.groups)
        groups.push_back({{"label", g.label},
                          {"members", g.members},
                          {"mean", g.mean},
                          {"std", g.std_dev},
                          {"pooled_n", g.pooled_n}});
    nlohmann::json mapping = nlohmann::json::array();
    for (const auto& [id, label] : bundle.k_to_d) mapping.push_back({{"image_id", id}, {"group", label}});
    nlohmann::json stab = nlohmann::json::array();
    for (const auto& [k, shift] : bundle.stabilization) stab.push_back({{"runs", k}, {"max_shift", shift}});

    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : bundle.records)
        records.push_back({{"id", rec.id},
                           {"k_bits", rec.k_bits},
                           {"d_mean", rec.d_mean},
                           {"d_std", rec.d_std}});

    nlohmann::json doc{
        {"k_ranking", ranking_json(bundle.k_ranking)},
        {"d_ranking", ranking_json(bundle.d_ranking)},
        {"groups", groups},
        {"k_to_d", mapping},
        {"correlation", bundle.correlation},
        {"stabilization", stab},
        {"records", records},
        {"session",
         {{"clock", bundle.session.clock_name},
          {"machine", bundle.session.machine},
          {"codec_version", bundle.session.codec_version},
          {"rng_version", bundle.session.rng_version},
          {"load_average", bundle.session.load_average}}},
    };
    return doc.dump(2) + "\n";
}

std::string bundle_to_csv(const ReportBundle& bundle) {
    std::ostringstream out;
    out << "id,k_bits,d_mean_s,d_std_s,k_rank,d_rank,group\n";
    for (const auto& rec : bundle.records) {
        const auto* ke = bundle.k_ranking.find(rec.id);
        const auto* de = bundle.d_ranking.find(rec.id);
        const int g = bundle.partition.group_of(rec.id);
        out << rec.id << ',' << rec.k_bits << ',' << rec.d_mean << ',' << rec.d_std << ','
            << (ke ? ke->rank : 0) << ',' << (de ? de->rank : 0) << ','
            << (g >= 0 ? bundle.partition.groups[g].label : "?") << '\n';
    }
    return out.str();
}

void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir / "results.jsonl", session_to_jsonl(bundle.session, bundle.stats));
    write_text(dir / "report.json", bundle_to_json(bundle));
    write_text(dir / "report.csv", bundle_to_csv(bundle));

    std::vector<BarDatum> k_bars;
    for (const auto& e : bundle.k_ranking.entries)
        k_bars.push_back({e.image_id, e.value, 0.0});
    write_text(dir / "k_ranking.svg", svg_bar_chart("Ranking by compressed length", "bits", k_bars));

    std::vector<BarDatum> d_bars;
    for (const auto& e : bundle.d_ranking.entries) {
        double err = 0.0;
        for (const auto& st : bundle.stats)
            if (st.image_id == e.image_id) err = st.std_dev;
        d_bars.push_back({e.image_id, e.value, err});
    }
    write_text(dir / "d_ranking.svg",
               svg_bar_chart("Ranking by decompression time", "seconds", d_bars));

    std::vector<std::pair<double, double>> k_to_d_points;
    for (const auto& e : bundle.k_ranking.entries) {
        const auto* de = bundle.d_ranking.find(e.image_id);
        if (de) k_to_d_points.emplace_back(e.rank, de->rank);
    }
    write_text(dir / "k_to_d.svg", svg_scatter("K rank vs D rank", "K rank", "D rank", k_to_d_points));

    std::vector<std::pair<double, double>> stab_points;
    for (const auto& [k, shift] : bundle.stabilization)
        stab_points.emplace_back(static_cast<double>(k), shift);
    write_text(dir / "stabilization.svg",
               svg_line("Running-mean stabilization", "runs", "max relative shift", stab_points));
}

void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries)
        arr.push_back({{"id", e.id},
                       {"file", e.file},
                       {"origin", e.origin},
                       {"params", e.params},
                       {"seed", e.seed},
                       {"width", e.width},
                       {"height", e.height},
                       {"content_hash", e.hash}});
    nlohmann::json doc{{"rng", Rng::algorithm_id}, {"codec", kCodecVersion}, {"images", arr}};
    write_text(path, doc.dump(2) + "\n");
}

} // namespace pixeldepth
