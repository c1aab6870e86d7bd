#include <doctest.h>

#include <cstdlib>

#include "pixeldepth/codec.hpp"
#include "pixeldepth/imagegen.hpp"
#include "pixeldepth/rle.hpp"
#include "pixeldepth/rng.hpp"

using namespace pixeldepth;

TEST_CASE("round trip: rule 30 601x600") {
    const Image img = gen_rule30(601, 600);
    for (bool optimize : {false, true}) {
        const auto blob = compress_image(img, optimize);
        CHECK(blob.filter_choices.size() == 600);
        CHECK(decompress_image(blob) == img);
    }
}

TEST_CASE("round trip: random 600x600") {
    const Image img = gen_random(600, 600, 31, 0.5);
    const auto blob = compress_image(img, true);
    CHECK(decompress_image(blob) == img);
}

TEST_CASE("round trip over odd geometries and depths") {
    Rng rng(1717);
    for (int trial = 0; trial < 30; ++trial) {
        const int w = 1 + static_cast<int>(rng.next_below(130));
        const int h = 1 + static_cast<int>(rng.next_below(90));
        Image img = gen_random(w, h, rng.next_u64(), rng.next_double());
        CHECK(decompress_image(compress_image(img, false)) == img);
    }
    // depth 8
    Image gray(41, 23, 8);
    for (auto& p : gray.pixels) p = static_cast<uint8_t>(rng.next_below(256));
    CHECK(decompress_image(compress_image(gray, true)) == gray);
}

TEST_CASE("optimize=true is never larger") {
    Rng rng(808);
    for (int trial = 0; trial < 8; ++trial) {
        Image img = trial % 2 == 0 ? gen_random(200, 200, rng.next_u64(), 0.15)
                                   : gen_rule30(201, 200);
        if (trial >= 4) img = add_noise(img, 0.3, rng.next_u64());
        const auto plain = compress_image(img, false);
        const auto opt = compress_image(img, true);
        CHECK(opt.bit_length() <= plain.bit_length());
    }
}

TEST_CASE("uniform image compresses to a tiny blob") {
    const Image img = gen_uniform(600, 600, 0);
    const auto blob = compress_image(img, true);
    // raw is 360000 bits; anything near 1% means the pipeline broke
    CHECK(blob.bit_length() < 3600);
    CHECK(decompress_image(blob) == img);
}

TEST_CASE("K ordering: uniform < rule30 < random at 600x600") {
    const auto k_uniform = k_estimate(gen_uniform(601, 600, 0), CodecId::filtered_deflate);
    const auto k_ca = k_estimate(gen_rule30(601, 600), CodecId::filtered_deflate);
    const auto k_random = k_estimate(gen_random(601, 600, 12, 0.5), CodecId::filtered_deflate);
    CHECK(k_uniform < k_ca);
    CHECK(k_ca < k_random);
}

TEST_CASE("inversion invariance of K within 1%") {
    for (const Image& img : {gen_rule30(601, 600), gen_random(600, 600, 5, 0.2)}) {
        const auto a = static_cast<double>(k_estimate(img, CodecId::filtered_deflate));
        const auto b = static_cast<double>(k_estimate(invert(img), CodecId::filtered_deflate));
        CHECK(std::abs(a - b) <= 0.01 * std::max(a, b));
    }
}

TEST_CASE("1x1 image: header-dominated small constant") {
    const auto blob = compress_image(gen_uniform(1, 1, 1), true);
    CHECK(blob.bit_length() < 512);
    CHECK(decompress_image(blob) == gen_uniform(1, 1, 1));
}

TEST_CASE("filter_choices length mismatch raises a consistency error") {
    const Image img = gen_random(32, 32, 6, 0.5);
    auto blob = compress_image(img, false);
    blob.filter_choices.pop_back();
    CHECK_THROWS_AS(decompress_image(blob), consistency_error);
}

TEST_CASE("corrupt payload raises a decode error") {
    const Image img = gen_random(64, 64, 6, 0.5);
    auto blob = compress_image(img, false);
    blob.payload.resize(blob.payload.size() / 2);
    CHECK_THROWS_AS(decompress_image(blob), decode_error);
}

TEST_CASE("parsed-from-disk blobs decode and recover filter choices") {
    const Image img = gen_rule30(101, 100);
    const auto blob = compress_image(img, true);
    const auto parsed = parse_blob(serialize_blob(blob));
    CHECK(parsed.filter_choices.empty());
    std::vector<FilterId> recovered;
    CHECK(decompress_image(parsed, &recovered) == img);
    CHECK(recovered == blob.filter_choices);
}

TEST_CASE("block-insertion series: filtered_deflate length decreases linearly") {
    SeriesSpec spec;
    spec.kind = SeriesKind::block_insertion;
    spec.width = 600;
    spec.height = 600;
    spec.seed = 1;
    spec.count = 40;
    spec.params["block_bits"] = 2000;
    const auto series = gen_block_series(spec);

    std::vector<double> lengths;
    for (const auto& img : series)
        lengths.push_back(static_cast<double>(compress_image(img, false).bit_length()));

    // negative slope with strong linearity
    const double n = static_cast<double>(lengths.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < lengths.size(); ++i) {
        sx += static_cast<double>(i);
        sy += lengths[i];
        sxx += static_cast<double>(i) * i;
        sxy += static_cast<double>(i) * lengths[i];
        syy += lengths[i] * lengths[i];
    }
    const double cov = sxy - sx * sy / n;
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    CHECK(cov < 0.0);
    CHECK(cov * cov / (vx * vy) >= 0.9);
}

TEST_CASE("tiling is redundancy: K(tile(img,2)) < 4 K(img)") {
    const Image img = gen_rule30(151, 150);
    const auto k_base = k_estimate(img, CodecId::filtered_deflate);
    const auto k_tiled = k_estimate(tile(img, 2), CodecId::filtered_deflate);
    CHECK(k_tiled < 4 * k_base);
}

TEST_CASE("k_estimate dispatches to the toy codec") {
    const Image img = gen_uniform(100, 100, 0);
    CHECK(k_estimate(img, CodecId::toy_rle) == rle_compress(img).bit_length());
}
