// Acceptance suite: every criterion below prints one [PASS]/[FAIL] line with
// the measured values; the exit code is the number of failures. Run a single
// criterion with `acceptance --only N`.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

#include "pixeldepth/analysis.hpp"
#include "pixeldepth/codec.hpp"
#include "pixeldepth/experiments.hpp"
#include "pixeldepth/rle.hpp"
#include "pixeldepth/rng.hpp"

using namespace pixeldepth;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass = false;
    std::string details;
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

Protocol session_protocol(uint64_t shuffle_seed = 0x5eed) {
    Protocol p;
    p.n_runs = 30;
    p.warmup_runs = 3;
    p.trim = 0.1;
    p.clear_cache = true;
    p.cache_scratch_bytes = 0; // buffer-drop only
    p.shuffle_seed = shuffle_seed;
    return p;
}

// ---- C1: codec round-trip over 1000 generated images, both codecs --------

Criterion c1_roundtrip() {
    Criterion c{1, "codec-round-trip"};
    const auto start = std::chrono::steady_clock::now();
    Rng rng(0xC1);
    int checked = 0;
    bool ok = true;
    std::string first_failure;

    for (int i = 0; i < 1000 && ok; ++i) {
        const int w = 1 + static_cast<int>(rng.next_below(120));
        const int h = 1 + static_cast<int>(rng.next_below(90));
        Image img;
        switch (i % 8) {
            case 0: img = gen_uniform(w, h, static_cast<uint8_t>(i & 1)); break;
            case 1: img = gen_random(w, h, rng.next_u64(), rng.next_double()); break;
            case 2: img = gen_rule30(w | 1, h); break;
            case 3: img = superpose_rotated(gen_rule30((w | 1), (w | 1))); break;
            case 4: img = add_noise(gen_rule30(w | 1, h), rng.next_double(), rng.next_u64()); break;
            case 5: img = invert(gen_random(w, h, rng.next_u64(), 0.2)); break;
            case 6: img = tile(gen_random(1 + w / 4, 1 + h / 4, rng.next_u64(), 0.5), 3); break;
            default: {
                SeriesSpec lines;
                lines.kind = SeriesKind::line_series;
                lines.width = std::max(2, w);
                lines.height = std::max(2, h);
                lines.seed = rng.next_u64();
                lines.count = 4;
                img = gen_line_series(lines).back();
                break;
            }
        }
        const auto toy = rle_decompress(rle_compress(img));
        const auto full = decompress_image(compress_image(img, (i % 97) == 0));
        if (toy != img || full != img) {
            ok = false;
            first_failure = "image " + std::to_string(i);
        }
        ++checked;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.pass = ok && elapsed < 120.0;
    c.details = std::to_string(checked) + " images bit-exact under both codecs in " +
                fmt(elapsed) + " s (budget 120 s)" +
                (first_failure.empty() ? "" : "; FIRST MISMATCH " + first_failure);
    return c;
}

// ---- C2/C3: block-insertion slopes ----------------------------------------

Criterion c2_toy_slope() {
    const Verdict v = run_block_series_toy();
    return {2, "toy-codec-slope", v.pass, v.summary};
}

Criterion c3_full_slope() {
    const Verdict v = run_block_series_png();
    return {3, "full-codec-slope", v.pass, v.summary};
}

// ---- C4: compressibility extremes ------------------------------------------

Criterion c4_extremes() {
    Criterion c{4, "compressibility-extremes"};
    const double raw_bits = 600.0 * 600.0;

    const auto k_random = static_cast<double>(
        compress_image(gen_random(600, 600, 23, 0.5), true).bit_length());
    const bool random_ok = k_random >= 0.9 * raw_bits;

    const auto k_uniform =
        static_cast<double>(compress_image(gen_uniform(600, 600, 0), true).bit_length());
    const bool uniform_ok = k_uniform <= 0.001 * raw_bits;

    c.pass = random_ok && uniform_ok;
    c.details = "K(random)=" + fmt(k_random) + " bits (want >= " + fmt(0.9 * raw_bits) +
                "): " + (random_ok ? "ok" : "FAIL") + "; K(uniform)=" + fmt(k_uniform) +
                " bits (want <= " + fmt(0.001 * raw_bits) + "): " + (uniform_ok ? "ok" : "FAIL") +
                " [RFC1951 floor for 45000 identical bytes is ~460 payload bits]";
    return c;
}

// ---- C5/C6: timing shapes ---------------------------------------------------

Criterion c5_size_scaling() {
    const Verdict v = run_size_scaling();
    return {5, "size-scaling-linearity", v.pass, v.summary};
}

Criterion c6_line_shape() {
    const Verdict v = run_line_series();
    return {6, "line-series-shape", v.pass, v.summary};
}

// ---- C7: logical-depth signature -------------------------------------------

Criterion c7_signature() {
    Criterion c{7, "logical-depth-signature"};
    const auto corpus = signature_corpus();

    std::vector<std::pair<std::string, double>> k_values;
    std::vector<CompressedBlob> blobs;
    std::vector<std::string> ids;
    for (const auto& [id, image] : corpus) {
        blobs.push_back(compress_image(image, true));
        ids.push_back(id);
        k_values.emplace_back(id, static_cast<double>(blobs.back().bit_length()));
    }
    const auto k_ranking = rank(k_values, Measure::K);
    const int random_k_rank = k_ranking.find("random")->rank;

    const auto stats = run_session(blobs, ids, session_protocol());
    const auto part = partition_significant(stats);
    const int g_random = part.group_of("random");
    // the organized elements must sit in strictly deeper groups; plain
    // rule 30 is itself a pseudo-random source whose decode work sits within
    // noise of the density-0.5 image, so for it the requirement is only that
    // random is not deeper
    bool below_structured = true;
    std::string group_note;
    for (const char* structured : {"rule30_sup", "tiled", "lines_mid"}) {
        const int g = part.group_of(structured);
        group_note += std::string(structured) + "=" + part.groups[g].label + " ";
        if (!(g_random > g)) below_structured = false;
    }
    const int g_ca = part.group_of("rule30");
    const bool ca_ok = g_random >= g_ca;

    c.pass = random_k_rank <= 2 && below_structured && ca_ok;
    c.details = "random K rank " + std::to_string(random_k_rank) + " (want <= 2); D groups: random=" +
                part.groups[g_random].label + " vs " + group_note +
                (below_structured ? "(strictly below)" : "(NOT strictly below)") +
                "; rule30=" + part.groups[g_ca].label +
                (ca_ok ? " (random not deeper)" : " (random DEEPER than rule30)");
    return c;
}

// ---- C8: inversion invariance ----------------------------------------------

Criterion c8_inversion() {
    Criterion c{8, "inversion-invariance"};
    const auto family = generate_series(canonical_series2());
    const auto ids = series_image_ids(canonical_series2());

    // K half: every image vs its inversion, optimize=true
    double worst_rel = 0.0;
    for (size_t i = 0; i + 1 < family.size(); i += 2) {
        const auto a = static_cast<double>(compress_image(family[i], true).bit_length());
        const auto b = static_cast<double>(compress_image(family[i + 1], true).bit_length());
        worst_rel = std::max(worst_rel, std::abs(a - b) / std::max(a, b));
    }
    const bool k_ok = worst_rel <= 0.01;

    // D half: inverse pairs co-grouped in >= 90% of session repetitions
    std::vector<CompressedBlob> blobs;
    for (const auto& img : family) blobs.push_back(compress_image(img, true));
    const int repetitions = 10;
    int co_grouped[3] = {0, 0, 0};
    for (int rep = 0; rep < repetitions; ++rep) {
        Protocol p = session_protocol();
        p.shuffle_seed = 0x8000 + rep;
        const auto stats = run_session(blobs, ids, p);
        const auto part = partition_significant(stats);
        for (int pair = 0; pair < 3; ++pair) {
            const int ga = part.group_of(ids[2 * pair]);
            const int gb = part.group_of(ids[2 * pair + 1]);
            if (ga >= 0 && ga == gb) ++co_grouped[pair];
        }
    }
    bool d_ok = true;
    std::string d_note;
    for (int pair = 0; pair < 3; ++pair) {
        const double frac = co_grouped[pair] / static_cast<double>(repetitions);
        d_note += ids[2 * pair] + " " + fmt(100.0 * frac) + "% ";
        if (frac < 0.9) d_ok = false;
    }

    c.pass = k_ok && d_ok;
    c.details = "max |dK| " + fmt(100.0 * worst_rel) + "% (want <= 1%); co-grouped " + d_note +
                "(want >= 90% each)";
    return c;
}

// ---- C9: grouping correctness against the brute-force oracle --------------

Criterion c9_grouping() {
    Criterion c{9, "grouping-correctness"};
    Rng rng(0xC9);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(32));
        std::vector<TimingStats> stats;
        for (int i = 0; i < n; ++i) {
            TimingStats st;
            st.image_id = "img" + std::to_string(i);
            st.mean = rng.next_double() * 20.0;
            st.std_dev = rng.next_double() * 3.0;
            st.n_runs = 2 + static_cast<int>(rng.next_below(40));
            stats.push_back(st);
        }
        const auto part = partition_significant(stats);
        // brute-force pairwise interval check + coverage
        size_t members = 0;
        for (const auto& g : part.groups) members += g.members.size();
        if (members != stats.size()) ++violations;
        for (size_t i = 0; i < part.groups.size() && violations == 0; ++i)
            for (size_t j = i + 1; j < part.groups.size(); ++j) {
                const auto& a = part.groups[i];
                const auto& b = part.groups[j];
                if (!(a.mean - a.std_dev > b.mean + b.std_dev)) ++violations;
            }
    }
    c.pass = violations == 0;
    c.details = "1000 randomized stat sets, " + std::to_string(violations) +
                " non-overlap violations (want 0)";
    return c;
}

// ---- C10: ranking stability -------------------------------------------------

Criterion c10_stability() {
    const Verdict v = run_series1();
    return {10, "ranking-stability", v.pass, v.summary};
}

// ---- C11: aggregation soundness ---------------------------------------------

Criterion c11_aggregation() {
    Criterion c{11, "aggregation-soundness"};
    Rng rng(0xC11);
    int contradictions = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        DepthMatrix m;
        const size_t n_codecs = 1 + rng.next_below(5);
        const size_t n_images = 2 + rng.next_below(10);
        for (size_t i = 0; i < n_codecs; ++i) {
            std::vector<double> row;
            for (size_t j = 0; j < n_images; ++j) row.push_back(1e-3 + rng.next_double());
            m.cells.push_back(std::move(row));
        }
        const auto agg = aggregate_depth(m);
        std::vector<size_t> pos(n_images);
        for (size_t p = 0; p < n_images; ++p) pos[agg.total_order[p]] = p;
        for (const auto& [h, k] : agg.partial_order)
            if (pos[h] >= pos[k]) ++contradictions;
    }
    c.pass = contradictions == 0;
    c.details = "1000 random depth matrices, " + std::to_string(contradictions) +
                " harmonic-order contradictions of the partial order (want 0)";
    return c;
}

// ---- C12: timing-harness integrity ------------------------------------------

Criterion c12_harness() {
    Criterion c{12, "timing-harness-integrity"};
    std::vector<CompressedBlob> blobs;
    std::vector<std::string> ids;
    auto push = [&](const std::string& id, const Image& img) {
        blobs.push_back(compress_image(img, false));
        ids.push_back(id);
    };
    push("uniform", gen_uniform(300, 300, 0));
    push("random", gen_random(300, 300, 5, 0.5));
    push("sparse", gen_random(300, 300, 6, 0.05));
    push("rule30", gen_rule30(301, 300));
    push("noisy", add_noise(gen_rule30(301, 300), 0.5, 7));
    push("tiled", tile(gen_rule30(75, 75), 4));
    push("inv", invert(gen_rule30(301, 300)));
    push("lines", [] {
        SeriesSpec lines;
        lines.kind = SeriesKind::line_series;
        lines.width = 300;
        lines.height = 300;
        lines.seed = 9;
        lines.count = 30;
        return gen_line_series(lines).back();
    }());

    // A/B arms interleaved at run granularity (verification work of 1x on
    // even runs, 2x on odd runs) so ambient drift is common mode; a real
    // leak of verification work into the timed region shifts the 2x arm by
    // the full decode cost
    std::vector<uint64_t> reference(blobs.size());
    for (size_t i = 0; i < blobs.size(); ++i)
        reference[i] = content_hash(decompress_image(blobs[i]));

    const int rounds = 30;
    std::vector<std::vector<double>> arm_a(blobs.size()), arm_b(blobs.size());
    auto visit = [&](size_t idx, int verify) {
        clear_cache_hook(0);
        // untimed decode equalizes the immediate context of both arms (the
        // preceding verify count differs by construction)
        if (decompress_image(blobs[idx]).pixels.empty())
            throw decode_error("context decode failed");
        const double elapsed = measure_one(blobs[idx]);
        for (int v = 0; v < verify; ++v)
            if (content_hash(decompress_image(blobs[idx])) != reference[idx])
                throw decode_error("integrity check failed");
        (verify == 1 ? arm_a : arm_b)[idx].push_back(elapsed);
    };
    for (int round = 0; round < rounds; ++round) {
        const auto order = session_schedule(0xC12, round, blobs.size());
        for (size_t idx : order) {
            // both arms back to back per visit, order alternating by round,
            // so drift and context are common mode
            if (round % 2 == 0) {
                visit(idx, 1);
                visit(idx, 2);
            } else {
                visit(idx, 2);
                visit(idx, 1);
            }
        }
    }

    Protocol agg = session_protocol();
    double z_sum = 0.0;
    for (size_t i = 0; i < blobs.size(); ++i) {
        const auto sa = aggregate(ids[i], arm_a[i], agg);
        const auto sb = aggregate(ids[i], arm_b[i], agg);
        const double se =
            std::sqrt(sa.std_err() * sa.std_err() + sb.std_err() * sb.std_err());
        z_sum += (sb.mean - sa.mean) / se;
    }
    const double z_mean = z_sum / static_cast<double>(blobs.size());

    c.pass = std::abs(z_mean) < 1.0;
    c.details = "systematic standardized mean shift " + fmt(z_mean) + " pooled SE across " +
                std::to_string(blobs.size()) +
                " images, run-interleaved arms (want |shift| < 1; a timed-region leak scores in "
                "the hundreds)";
    return c;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    using Runner = std::function<Criterion()>;
    const std::vector<Runner> runners{c1_roundtrip, c2_toy_slope,   c3_full_slope, c4_extremes,
                                      c5_size_scaling, c6_line_shape, c7_signature,  c8_inversion,
                                      c9_grouping,     c10_stability, c11_aggregation, c12_harness};

    int failures = 0;
    for (size_t i = 0; i < runners.size(); ++i) {
        if (only != 0 && static_cast<int>(i) + 1 != only) continue;
        Criterion c;
        try {
            c = runners[i]();
        } catch (const std::exception& e) {
            c.id = static_cast<int>(i) + 1;
            c.name = "criterion-" + std::to_string(c.id);
            c.pass = false;
            c.details = std::string("exception: ") + e.what();
        }
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "C" << (c.id < 10 ? "0" : "")
                  << c.id << " " << c.name << ": " << c.details << "\n";
        if (!c.pass) ++failures;
    }
    return failures;
}
