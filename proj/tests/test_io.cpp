#include <doctest.h>

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pixeldepth/config.hpp"
#include "pixeldepth/imagegen.hpp"
#include "pixeldepth/ingest.hpp"
#include "pixeldepth/pngread.hpp"
#include "pixeldepth/pnm.hpp"
#include "pixeldepth/rng.hpp"

using namespace pixeldepth;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("pixeldepth_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// assemble a valid PNG in memory (zlib-wrapped IDAT, correct CRCs)
std::vector<uint8_t> make_png(int w, int h, int color_type, int bit_depth,
                              const std::vector<uint8_t>& raw_scanlines,
                              const std::vector<uint8_t>& plte = {}) {
    std::vector<uint8_t> png{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    auto be32 = [](std::vector<uint8_t>& v, uint32_t x) {
        v.push_back(static_cast<uint8_t>(x >> 24));
        v.push_back(static_cast<uint8_t>(x >> 16));
        v.push_back(static_cast<uint8_t>(x >> 8));
        v.push_back(static_cast<uint8_t>(x));
    };
    auto chunk = [&](const char* type, const std::vector<uint8_t>& data) {
        be32(png, static_cast<uint32_t>(data.size()));
        const size_t start = png.size();
        png.insert(png.end(), type, type + 4);
        png.insert(png.end(), data.begin(), data.end());
        const auto crc = static_cast<uint32_t>(
            crc32(0L, png.data() + start, static_cast<uInt>(4 + data.size())));
        be32(png, crc);
    };

    std::vector<uint8_t> ihdr;
    be32(ihdr, static_cast<uint32_t>(w));
    be32(ihdr, static_cast<uint32_t>(h));
    ihdr.push_back(static_cast<uint8_t>(bit_depth));
    ihdr.push_back(static_cast<uint8_t>(color_type));
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    chunk("IHDR", ihdr);
    if (!plte.empty()) chunk("PLTE", plte);

    uLongf bound = compressBound(static_cast<uLong>(raw_scanlines.size()));
    std::vector<uint8_t> idat(bound);
    REQUIRE(compress2(idat.data(), &bound, raw_scanlines.data(),
                      static_cast<uLong>(raw_scanlines.size()), 6) == Z_OK);
    idat.resize(bound);
    chunk("IDAT", idat);
    chunk("IEND", {});
    return png;
}

} // namespace

TEST_CASE("pbm round trip, raw and plain") {
    TempDir tmp;
    const Image img = gen_random(37, 23, 5, 0.4);
    for (bool raw : {true, false}) {
        const auto path = tmp.path / (raw ? "x.pbm" : "x_plain.pbm");
        write_pbm(img, path, raw);
        CHECK(read_pnm(path) == img);
    }
}

TEST_CASE("pgm round trip") {
    TempDir tmp;
    Image gray(19, 7, 8);
    Rng rng(3);
    for (auto& p : gray.pixels) p = static_cast<uint8_t>(rng.next_below(256));
    write_pgm(gray, tmp.path / "g.pgm", true);
    CHECK(read_pnm(tmp.path / "g.pgm") == gray);
    write_pgm(gray, tmp.path / "g2.pgm", false);
    CHECK(read_pnm(tmp.path / "g2.pgm") == gray);
}

TEST_CASE("pnm parser rejects garbage") {
    CHECK_THROWS_AS(parse_pnm({'X', 'Y'}), format_error);
    CHECK_THROWS_AS(parse_pnm({'P', '7', '\n'}), format_error);
    // truncated raw body
    std::vector<uint8_t> bad{'P', '4', '\n', '1', '6', ' ', '1', '6', '\n', 0x00};
    CHECK_THROWS_AS(parse_pnm(bad), format_error);
}

TEST_CASE("png grayscale import") {
    // 4x2 gray8, filter byte 0 per row
    std::vector<uint8_t> scan{0, 10, 20, 200, 250, 0, 1, 2, 3, 4};
    const auto png = make_png(4, 2, 0, 8, scan);
    const Image img = parse_png_gray(png, "test");
    CHECK(img.width == 4);
    CHECK(img.height == 2);
    CHECK(img.depth == 8);
    CHECK(img.at(0, 0) == 10);
    CHECK(img.at(3, 0) == 250);
    CHECK(img.at(3, 1) == 4);
}

TEST_CASE("png rgb import uses bt709 luminance") {
    // 2x1 RGB: pure red and pure white
    std::vector<uint8_t> scan{0, 255, 0, 0, 255, 255, 255};
    const auto png = make_png(2, 1, 2, 8, scan);
    const Image img = parse_png_gray(png, "test");
    CHECK(img.at(0, 0) == 54);  // 0.2126*255 rounded
    CHECK(img.at(1, 0) == 255);
}

TEST_CASE("png palette and filtered rows import") {
    // palette: 0 -> black, 1 -> white; 3x2, sub filter on row 1
    std::vector<uint8_t> plte{0, 0, 0, 255, 255, 255};
    std::vector<uint8_t> scan{0, 0, 1, 1, 1, 1, 0, 0}; // row0: none; row1: sub with deltas
    const auto png = make_png(3, 2, 3, 8, scan, plte);
    const Image img = parse_png_gray(png, "test");
    CHECK(img.at(0, 0) == 0);
    CHECK(img.at(1, 0) == 255);
    // row 1 decoded via sub: 1, 1+0=1, 1+0=1 -> white white white
    CHECK(img.at(0, 1) == 255);
    CHECK(img.at(2, 1) == 255);
}

TEST_CASE("png corrupt CRC rejected") {
    std::vector<uint8_t> scan{0, 1, 2};
    auto png = make_png(2, 1, 0, 8, scan);
    png[20] ^= 0xFF; // inside IHDR payload
    CHECK_THROWS_AS(parse_png_gray(png, "test"), format_error);
}

TEST_CASE("binarize threshold and tie rule") {
    Image gray(3, 1, 8);
    gray.pixels = {127, 128, 0};
    const Image bw = binarize(gray);
    CHECK(bw.pixels == std::vector<uint8_t>{kBlack, kWhite, kBlack});
}

TEST_CASE("center crop and scale") {
    // 4x2 -> crop to centered 2x2 -> identity scale
    Image img(4, 2, 8);
    img.pixels = {1, 2, 3, 4, 5, 6, 7, 8};
    const Image crop = center_crop_scale(img, 2);
    CHECK(crop.pixels == std::vector<uint8_t>{2, 3, 6, 7});

    // upscale 1x1 -> 3x3
    Image dot(1, 1, 1, 1);
    CHECK(center_crop_scale(dot, 3) == gen_uniform(3, 3, 1));
}

TEST_CASE("ingest identity on already-binary target-size input") {
    TempDir tmp;
    const Image img = gen_random(600, 600, 77, 0.3);
    write_pbm(img, tmp.path / "b.pbm", true);
    const auto result = ingest_file(tmp.path / "b.pbm");
    CHECK(result.image == img);
}

TEST_CASE("ingest scales oversized binary input") {
    TempDir tmp;
    const Image big = gen_random(1200, 1200, 8, 0.5);
    write_pbm(big, tmp.path / "big.pbm", true);
    IngestOptions opts;
    opts.target_size = 600;
    const auto result = ingest_file(tmp.path / "big.pbm", opts);
    CHECK(result.image.width == 600);
    CHECK(result.image.height == 600);
    // nearest neighbour on a 2:1 reduction picks every other pixel
    CHECK(result.image.at(0, 0) == big.at(0, 0));
    CHECK(result.image.at(10, 20) == big.at(20, 40));
}

TEST_CASE("ingest mid-gray goes white per the documented tie rule") {
    TempDir tmp;
    Image gray(600, 600, 8, 128);
    write_pgm(gray, tmp.path / "mid.pgm", true);
    const auto result = ingest_file(tmp.path / "mid.pgm");
    CHECK(result.image.ink() == 0);
}

TEST_CASE("ingest rejects unknown formats with the supported list") {
    TempDir tmp;
    std::ofstream(tmp.path / "x.bin") << "not an image";
    try {
        ingest_file(tmp.path / "x.bin");
        FAIL("expected format_error");
    } catch (const format_error& e) {
        CHECK(std::string(e.what()).find("PBM") != std::string::npos);
    }
}

TEST_CASE("config parsing") {
    const std::string text = R"(
# demo
name = trial
out = results
codec = toy_rle
optimize = false
runs = 12
trim = 0.05

[series]
kind = line_series
width = 300
height = 200
seed = 9
count = 10

[series]
kind = random_threshold
threshold0 = 0.25
count = 2

[ingest]
path = photos/wall.png
)";
    const auto cfg = parse_config_text(text);
    CHECK(cfg.name == "trial");
    CHECK(cfg.output_dir == fs::path("results"));
    CHECK(cfg.codec == CodecId::toy_rle);
    CHECK(cfg.optimize == false);
    CHECK(cfg.protocol.n_runs == 12);
    CHECK(cfg.protocol.trim == 0.05);
    REQUIRE(cfg.series.size() == 2);
    CHECK(cfg.series[0].kind == SeriesKind::line_series);
    CHECK(cfg.series[0].width == 300);
    CHECK(cfg.series[0].count == 10);
    CHECK(cfg.series[1].param("threshold0", 0) == 0.25);
    REQUIRE(cfg.ingest_paths.size() == 1);
    CHECK(cfg.ingest_paths[0] == fs::path("photos/wall.png"));

    CHECK_THROWS_AS(parse_config_text("nonsense line"), parameter_error);
    CHECK_THROWS_AS(parse_config_text("[bogus]"), parameter_error);
    CHECK_THROWS_AS(parse_config_text("runs = many"), parameter_error);
    ExperimentConfig empty;
    CHECK_THROWS_AS(empty.validate_sources(), parameter_error);
}
