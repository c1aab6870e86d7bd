#include "pixeldepth/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pixeldepth/codec.hpp"
#include "pixeldepth/rle.hpp"

namespace pixeldepth {

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw parameter_error("fit needs >= 2 points");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double cov = sxy - sx * sy / n;
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    LinearFit fit;
    fit.slope = cov / vx;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.r2 = vy > 0.0 ? cov * cov / (vx * vy) : 1.0;
    return fit;
}

SeriesSpec canonical_block_series() {
    SeriesSpec spec;
    spec.kind = SeriesKind::block_insertion;
    spec.width = 600;
    spec.height = 600;
    spec.seed = 1;
    spec.count = 100;
    spec.params["block_bits"] = 2000;
    spec.params["density"] = 0.5;
    return spec;
}

SeriesSpec canonical_line_series() {
    SeriesSpec spec;
    spec.kind = SeriesKind::line_series;
    spec.width = 600;
    spec.height = 600;
    spec.seed = 7;
    spec.count = 100;
    return spec;
}

SeriesSpec canonical_series1() {
    SeriesSpec spec;
    spec.kind = SeriesKind::random_threshold;
    spec.width = 600;
    spec.height = 600;
    spec.seed = 3;
    spec.count = 5;
    // densities chosen inside the codec's compressible regime so the depth
    // response is monotone (near 0.5 the stream is stored verbatim and
    // decodes anomalously fast)
    spec.params["threshold0"] = 0.2;
    spec.params["threshold1"] = 0.1;
    spec.params["threshold2"] = 0.05;
    spec.params["threshold3"] = 0.02;
    spec.params["threshold4"] = 0.005;
    return spec;
}

SeriesSpec canonical_series2() {
    SeriesSpec spec;
    spec.kind = SeriesKind::rule30_family;
    spec.width = 601;
    spec.height = 601;
    spec.seed = 11;
    spec.count = 6;
    spec.params["noise_fraction"] = 0.5;
    return spec;
}

std::vector<NamedImage> signature_corpus() {
    std::vector<NamedImage> corpus;
    corpus.push_back({"uniform", gen_uniform(600, 600, 0)});
    corpus.push_back({"random", gen_random(600, 600, 19, 0.5)});
    corpus.push_back({"rule30", gen_rule30(601, 600)});
    corpus.push_back({"rule30_sup", superpose_rotated(gen_rule30(601, 601))});
    // photo-like: a repeated structural motif under per-copy sensor grain
    // (grain applied after tiling, as a photograph of a repeating structure
    // has it; bit-identical copies compress to long matches and decode
    // nearly as fast as uniform)
    corpus.push_back({"tiled", add_noise(tile(gen_rule30(151, 150), 4), 0.25, 41)});
    // the structured midpoint of the white-to-black path: the series element
    // with maximal compressed length (the index midpoint is already close to
    // saturated black at this geometry)
    const auto lines = gen_line_series(canonical_line_series());
    size_t peak = 0;
    uint64_t peak_bits = 0;
    for (size_t i = 0; i < lines.size(); ++i) {
        const auto bits = compress_image(lines[i], false).bit_length();
        if (bits > peak_bits) {
            peak_bits = bits;
            peak = i;
        }
    }
    corpus.push_back({"lines_mid", lines[peak]});
    return corpus;
}

namespace {

Protocol bench_protocol() {
    Protocol p;
    p.n_runs = 30;
    p.warmup_runs = 3;
    p.trim = 0.1;
    p.clear_cache = true;
    p.cache_scratch_bytes = 0; // buffer-drop only; see README on cache policy
    p.keep_samples = true;
    return p;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

std::vector<double> series_lengths(const std::vector<Image>& images, CodecId codec) {
    std::vector<double> lengths;
    lengths.reserve(images.size());
    for (const auto& img : images)
        lengths.push_back(static_cast<double>(
            codec == CodecId::toy_rle ? rle_compress(img).bit_length()
                                      : compress_image(img, false).bit_length()));
    return lengths;
}

std::vector<double> indices_of(size_t n) {
    std::vector<double> xs(n);
    for (size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i);
    return xs;
}

} // namespace

Verdict run_block_series_toy() {
    Verdict v;
    v.test_id = "block_series_toy";
    const auto images = gen_block_series(canonical_block_series());
    const auto lengths = series_lengths(images, CodecId::toy_rle);

    const double mean_drop = (lengths.front() - lengths.back()) / static_cast<double>(lengths.size() - 1);
    const auto fit = linear_fit(indices_of(lengths.size()), lengths);

    const bool drop_ok = mean_drop >= 1900.0 && mean_drop <= 2000.0;
    const bool fit_ok = fit.r2 >= 0.99;
    v.pass = drop_ok && fit_ok;
    v.summary = "toy codec drop " + fmt(mean_drop) + " bits/image (want [1900,2000]), R^2 " +
                fmt(fit.r2) + " (want >= 0.99)";
    v.detail.push_back("first length " + fmt(lengths.front()) + " bits, last " +
                       fmt(lengths.back()) + " bits");
    v.detail.push_back("fit slope " + fmt(fit.slope) + " bits/image");
    return v;
}

Verdict run_block_series_png() {
    Verdict v;
    v.test_id = "block_series_png";
    const auto images = gen_block_series(canonical_block_series());
    const auto lengths = series_lengths(images, CodecId::filtered_deflate);
    const auto fit = linear_fit(indices_of(lengths.size()), lengths);

    v.pass = fit.slope < 0.0 && fit.r2 >= 0.9;
    v.summary = "filtered_deflate slope " + fmt(fit.slope) + " bits/image (want < 0), R^2 " +
                fmt(fit.r2) + " (want >= 0.9)";
    v.detail.push_back("first length " + fmt(lengths.front()) + " bits, last " +
                       fmt(lengths.back()) + " bits");
    return v;
}

Verdict run_size_scaling() {
    Verdict v;
    v.test_id = "size_scaling";
    const std::vector<int> sides{100, 300, 500, 700, 900};

    std::vector<CompressedBlob> blobs;
    std::vector<std::string> ids;
    for (int side : sides) {
        blobs.push_back(compress_image(gen_uniform(side, side, 0), false));
        ids.push_back("uniform_" + std::to_string(side));
    }
    // density 0.3 keeps every size in the compressed-block decode regime;
    // at 0.5 the codec flips between marginally-compressed and stored
    // encodings across sizes, mixing two decode mechanisms in one family
    for (int side : sides) {
        blobs.push_back(compress_image(gen_random(side, side, 29, 0.3), false));
        ids.push_back("random_" + std::to_string(side));
    }

    const auto stats = run_session(blobs, ids, bench_protocol());

    std::vector<double> pixel_counts;
    for (int side : sides) pixel_counts.push_back(static_cast<double>(side) * side);
    std::vector<double> uniform_times, random_times;
    for (size_t i = 0; i < sides.size(); ++i) {
        uniform_times.push_back(stats[i].mean);
        random_times.push_back(stats[sides.size() + i].mean);
    }

    const auto fit_u = linear_fit(pixel_counts, uniform_times);
    const auto fit_r = linear_fit(pixel_counts, random_times);
    v.pass = fit_u.r2 >= 0.9 && fit_r.r2 >= 0.9 && fit_u.slope > 0.0 && fit_r.slope > 0.0;
    v.summary = "mean decode time vs pixels: uniform R^2 " + fmt(fit_u.r2) + ", random R^2 " +
                fmt(fit_r.r2) + " (want both >= 0.9, positive slopes)";
    for (size_t i = 0; i < sides.size(); ++i)
        v.detail.push_back(std::to_string(sides[i]) + "^2: uniform " + fmt(uniform_times[i]) +
                           " s, random " + fmt(random_times[i]) + " s");
    return v;
}

Verdict run_line_series() {
    Verdict v;
    v.test_id = "line_series";
    const auto images = gen_line_series(canonical_line_series());

    std::vector<CompressedBlob> blobs;
    std::vector<std::string> ids;
    for (size_t i = 0; i < images.size(); ++i) {
        blobs.push_back(compress_image(images[i], false));
        ids.push_back("line_" + std::to_string(i));
    }
    const auto stats = run_session(blobs, ids, bench_protocol());

    size_t arg_max = 0;
    for (size_t i = 1; i < stats.size(); ++i)
        if (stats[i].mean > stats[arg_max].mean) arg_max = i;

    const auto& first = stats.front();
    const auto& last = stats.back();
    const auto& peak = stats[arg_max];
    auto excess = [&peak](const TimingStats& endpoint) {
        const double se =
            std::sqrt(peak.std_err() * peak.std_err() + endpoint.std_err() * endpoint.std_err());
        return (peak.mean - endpoint.mean) / se;
    };
    const double excess_first = excess(first);
    const double excess_last = excess(last);

    const bool interior = arg_max != 0 && arg_max + 1 != stats.size();
    v.pass = interior && excess_first >= 3.0 && excess_last >= 3.0;
    v.summary = "line-series peak at image " + std::to_string(arg_max) + ", exceeds endpoints by " +
                fmt(excess_first) + " / " + fmt(excess_last) + " pooled SE (want >= 3, interior)";
    v.detail.push_back("endpoint means " + fmt(first.mean) + " s / " + fmt(last.mean) +
                       " s, peak " + fmt(peak.mean) + " s");
    return v;
}

namespace {

struct SessionRanking {
    RankedSet ranking;
    std::vector<TimingStats> stats;
};

SessionRanking series_session(const SeriesSpec& spec, uint64_t shuffle_seed) {
    const auto images = generate_series(spec);
    const auto ids = series_image_ids(spec);
    std::vector<CompressedBlob> blobs;
    for (const auto& img : images) blobs.push_back(compress_image(img, false));
    Protocol p = bench_protocol();
    p.shuffle_seed = shuffle_seed;
    SessionRanking out;
    out.stats = run_session(blobs, ids, p);
    std::vector<std::pair<std::string, double>> values;
    for (const auto& st : out.stats) values.emplace_back(st.image_id, st.mean);
    out.ranking = rank(values, Measure::D);
    return out;
}

} // namespace

Verdict run_series1() {
    Verdict v;
    v.test_id = "series1";
    const auto spec = canonical_series1();
    const auto a = series_session(spec, 1001);
    const auto b = series_session(spec, 2002);

    const double rho = rank_correlation(a.ranking, b.ranking);

    // densest (image 0) must stay in the top half, sparsest (image 4) in the
    // bottom half, in both sessions
    const auto ids = series_image_ids(spec);
    const int n = static_cast<int>(ids.size());
    auto half_ok = [&](const RankedSet& r) {
        const auto* densest = r.find(ids.front());
        const auto* sparsest = r.find(ids.back());
        return densest && sparsest && densest->rank <= n / 2 && sparsest->rank > n / 2;
    };
    const bool halves = half_ok(a.ranking) && half_ok(b.ranking);

    v.pass = rho >= 0.9 && halves;
    v.summary = "series-1 session agreement: Spearman rho " + fmt(rho) +
                " (want >= 0.9), extremes in opposite halves " + (halves ? "yes" : "NO");
    for (const auto& e : a.ranking.entries)
        v.detail.push_back("session A rank " + std::to_string(e.rank) + ": " + e.image_id + " " +
                           fmt(e.value) + " s");
    return v;
}

Verdict run_series2() {
    Verdict v;
    v.test_id = "series2";
    const auto spec = canonical_series2();
    const auto images = generate_series(spec);
    const auto ids = series_image_ids(spec);

    std::vector<CompressedBlob> blobs;
    for (const auto& img : images) blobs.push_back(compress_image(img, true));
    const auto stats = run_session(blobs, ids, bench_protocol());
    const auto part = partition_significant(stats);

    bool pairs_ok = true;
    std::vector<std::pair<std::string, std::string>> pairs{
        {"rule30_family-ca", "rule30_family-ca_inv"},
        {"rule30_family-sup", "rule30_family-sup_inv"},
        {"rule30_family-noisy", "rule30_family-noisy_inv"}};
    for (const auto& [x, y] : pairs) {
        const int gx = part.group_of(x);
        const int gy = part.group_of(y);
        if (gx < 0 || gx != gy) pairs_ok = false;
        v.detail.push_back(x + " group " + (gx >= 0 ? part.groups[gx].label : "?") + ", " + y +
                           " group " + (gy >= 0 ? part.groups[gy].label : "?"));
    }

    // spread comparison against series 1, reported: inverse pairs decode at
    // nearly equal depth, and their rank swaps widen the series' spread
    const auto s1 = series_session(canonical_series1(), 3003);
    const auto summary = stats_summary({{"series2_ca", stats}, {"series1_random", s1.stats}});
    for (const auto& s : summary)
        v.detail.push_back("pooled std " + s.series + ": " + fmt(s.pooled_std) + " s");

    v.pass = pairs_ok;
    v.summary = std::string("series-2 inverse pairs share partition groups: ") +
                (pairs_ok ? "yes" : "NO") + "; spread ordering reported in detail";
    return v;
}

Verdict run_experiment(const std::string& test_id) {
    if (test_id == "block_series_toy") return run_block_series_toy();
    if (test_id == "block_series_png") return run_block_series_png();
    if (test_id == "size_scaling") return run_size_scaling();
    if (test_id == "line_series") return run_line_series();
    if (test_id == "series1") return run_series1();
    if (test_id == "series2") return run_series2();
    throw parameter_error("unknown test id: " + test_id +
                          " (known: size_scaling, block_series_toy, block_series_png, "
                          "line_series, series1, series2)");
}

std::vector<std::string> experiment_ids() {
    return {"size_scaling", "block_series_toy", "block_series_png",
            "line_series", "series1",          "series2"};
}

} // namespace pixeldepth
