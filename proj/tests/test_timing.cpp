#include <doctest.h>

#include <cmath>
#include <map>

#include "pixeldepth/codec.hpp"
#include "pixeldepth/imagegen.hpp"
#include "pixeldepth/rng.hpp"
#include "pixeldepth/timing.hpp"

using namespace pixeldepth;

TEST_CASE("protocol validation") {
    Protocol p;
    p.n_runs = 1;
    CHECK_THROWS_AS(validate(p), parameter_error);
    p.n_runs = 30;
    p.trim = 0.3;
    CHECK_THROWS_AS(validate(p), parameter_error);
    p.trim = 0.1;
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("schedule is a pure function of seed and run index") {
    const auto a = session_schedule(42, 7, 56);
    const auto b = session_schedule(42, 7, 56);
    CHECK(a == b);
    CHECK(a != session_schedule(42, 8, 56));
    CHECK(a != session_schedule(43, 7, 56));

    // permutation property
    std::vector<bool> seen(56, false);
    for (size_t idx : a) {
        CHECK(idx < 56);
        CHECK(!seen[idx]);
        seen[idx] = true;
    }
}

TEST_CASE("aggregate matches recomputation from retained samples") {
    Protocol p;
    p.trim = 0.1;
    p.keep_samples = true;
    Rng rng(17);
    std::vector<double> samples;
    for (int i = 0; i < 30; ++i) samples.push_back(1e-4 + 1e-6 * rng.next_double());
    const auto st = aggregate("img", samples, p);
    const auto again = aggregate("img", st.samples, p);
    CHECK(st.mean == again.mean); // bit-exact: same samples, same policy
    CHECK(st.std_dev == again.std_dev);
    CHECK(st.n_runs == again.n_runs);
    CHECK(st.n_runs == 24); // 30 - 2*floor(0.1*30)
}

TEST_CASE("trimming drops symmetric extremes") {
    Protocol p;
    p.trim = 0.1;
    std::vector<double> samples(28, 1.0);
    samples.push_back(100.0); // spike
    samples.push_back(0.0);   // stall
    const auto st = aggregate("img", samples, p);
    CHECK(st.mean == doctest::Approx(1.0));
    CHECK(st.std_dev == doctest::Approx(0.0));
}

TEST_CASE("run_session on real blobs") {
    std::vector<CompressedBlob> blobs;
    std::vector<std::string> ids;
    blobs.push_back(compress_image(gen_uniform(64, 64, 0), false));
    ids.push_back("uniform");
    blobs.push_back(compress_image(gen_random(64, 64, 3, 0.5), false));
    ids.push_back("random");

    Protocol p;
    p.n_runs = 5;
    p.warmup_runs = 1;
    p.clear_cache = false;
    p.trim = 0.0;

    std::vector<TimingSample> samples;
    const auto stats = run_session(blobs, ids, p, &samples);
    REQUIRE(stats.size() == 2);
    for (const auto& st : stats) {
        CHECK(st.n_runs == 5);
        CHECK(st.mean > 0.0);
        CHECK(st.std_dev >= 0.0);
    }
    CHECK(samples.size() == 10);

    SUBCASE("n_runs=1 is rejected") {
        Protocol bad = p;
        bad.n_runs = 1;
        CHECK_THROWS_AS(run_session(blobs, ids, bad), parameter_error);
    }
}

TEST_CASE("session aborts on undecodable blobs") {
    auto blob = compress_image(gen_random(32, 32, 9, 0.5), false);
    blob.payload.resize(blob.payload.size() / 2);
    Protocol p;
    p.n_runs = 2;
    CHECK_THROWS_AS(run_session({blob}, {"broken"}, p), decode_error);
}

TEST_CASE("stabilization curve on constant fake samples is zero") {
    std::vector<TimingSample> samples;
    for (int run = 0; run < 10; ++run)
        for (const char* id : {"a", "b"}) samples.push_back({id, run, 5e-4});
    // identical samples: shifts vanish up to summation rounding
    for (const auto& [k, shift] : stabilization_curve(samples)) CHECK(shift < 1e-12);
}

TEST_CASE("stabilization curve decays roughly like 1/k on iid noise") {
    Rng rng(2025);
    std::vector<TimingSample> samples;
    for (int run = 0; run < 64; ++run)
        samples.push_back({"x", run, 1.0 + 0.2 * (rng.next_double() - 0.5)});
    const auto curve = stabilization_curve(samples);
    // average shift over early prefixes dominates the average over late ones
    double early = 0.0, late = 0.0;
    int ne = 0, nl = 0;
    for (const auto& [k, shift] : curve) {
        if (k <= 8) { early += shift; ++ne; }
        if (k > 32) { late += shift; ++nl; }
    }
    CHECK(early / ne > 3.0 * (late / nl));
    CHECK_THROWS_AS(stabilization_curve({{"solo", 0, 1.0}}), parameter_error);
}

TEST_CASE("clear_cache_hook is idempotent and size-configurable") {
    clear_cache_hook(1 << 16);
    clear_cache_hook(1 << 16);
    clear_cache_hook(0); // degenerates to buffer drop
    CHECK(true);
}

TEST_CASE("session metadata records clock and versions") {
    Protocol p;
    const auto meta = make_session_metadata(p);
    CHECK((meta.clock_name == "thread_cputime" || meta.clock_name == "steady"));
    CHECK(meta.clock_resolution_s > 0.0);
    CHECK(meta.codec_version == kCodecVersion);
    CHECK(meta.rng_version == std::string(Rng::algorithm_id));

    TimingStats st;
    st.image_id = "img";
    st.mean = 1e-3;
    st.std_dev = 1e-5;
    st.n_runs = 30;
    const auto jsonl = session_to_jsonl(meta, {st});
    CHECK(jsonl.find("\"type\":\"session\"") != std::string::npos);
    CHECK(jsonl.find("\"type\":\"stats\"") != std::string::npos);
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 2);
}

TEST_CASE("measure_one: a 1x1 blob is faster than a 600x600 blob") {
    const auto tiny = compress_image(gen_uniform(1, 1, 0), false);
    const auto big = compress_image(gen_random(600, 600, 8, 0.4), false);
    // warm up the decompressor once per the protocol contract
    (void)decompress_image(tiny);
    (void)decompress_image(big);
    auto median_of = [](const CompressedBlob& blob) {
        std::vector<double> t;
        for (int i = 0; i < 15; ++i) t.push_back(measure_one(blob));
        std::sort(t.begin(), t.end());
        return t[t.size() / 2];
    };
    CHECK(median_of(tiny) < median_of(big));
}

TEST_CASE("sub-granularity decodes are batched and divided") {
    const auto blob = compress_image(gen_uniform(4, 4, 0), false);
    // a fake clock advancing 10ns per reading puts every decode below the
    // 50-tick floor, forcing the batch path
    uint64_t fake_now = 0;
    Protocol p;
    p.n_runs = 3;
    p.warmup_runs = 1;
    p.clear_cache = false;
    p.trim = 0.0;
    const auto stats = run_session({blob}, {"tiny"}, p, nullptr,
                                   [&fake_now] { return fake_now += 10; });
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].batch > 1);
    // batched sample = batch-window / batch < single-call delta
    for (double s : stats[0].samples) CHECK(s < 10e-9);
}

TEST_CASE("verification cost does not leak into timed means") {
    // A/B: doubling the post-measurement verification work must not shift
    // the per-image means beyond noise
    std::vector<CompressedBlob> blobs{compress_image(gen_rule30(201, 200), false)};
    std::vector<std::string> ids{"ca"};

    Protocol a;
    a.n_runs = 12;
    a.warmup_runs = 2;
    a.clear_cache = false;
    a.verify_repeats = 1;
    Protocol b = a;
    b.verify_repeats = 4;

    const auto sa = run_session(blobs, ids, a);
    const auto sb = run_session(blobs, ids, b);
    const double se = std::sqrt(sa[0].std_err() * sa[0].std_err() +
                                sb[0].std_err() * sb[0].std_err());
    // decode of this image costs ~100s of microseconds; a leak would shift
    // the mean by multiples of itself
    CHECK(std::abs(sa[0].mean - sb[0].mean) < std::max(8.0 * se, 0.5 * sa[0].mean));
}
