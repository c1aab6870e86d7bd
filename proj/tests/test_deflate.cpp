#include <doctest.h>

#include "pixeldepth/deflate.hpp"
#include "pixeldepth/rng.hpp"

using namespace pixeldepth;

namespace {

std::vector<uint8_t> random_bytes(uint64_t seed, size_t n) {
    Rng rng(seed);
    std::vector<uint8_t> out(n);
    for (auto& b : out) b = static_cast<uint8_t>(rng.next_below(256));
    return out;
}

} // namespace

TEST_CASE("empty input round trips") {
    const std::vector<uint8_t> empty;
    const auto stream = deflate_compress(empty, 9);
    CHECK(!stream.empty());
    CHECK(inflate(stream).empty());
}

TEST_CASE("maximal redundancy: 360000 zero bytes shrink below 1%") {
    const std::vector<uint8_t> zeros(360000, 0);
    const auto stream = deflate_compress(zeros, 9);
    CHECK(stream.size() < zeros.size() / 100);
    CHECK(inflate(stream, zeros.size()) == zeros);
}

TEST_CASE("incompressibility: random bytes stay above 99%") {
    const auto data = random_bytes(8, 360000);
    const auto stream = deflate_compress(data, 9);
    CHECK(stream.size() >= data.size() * 99 / 100);
    CHECK(inflate(stream) == data);
}

TEST_CASE("round trip across efforts and sizes") {
    Rng rng(5150);
    for (int effort : {1, 3, 6, 9}) {
        for (size_t n : {size_t(1), size_t(100), size_t(65536)}) {
            const auto data = random_bytes(rng.next_u64(), n);
            CHECK(inflate(deflate_compress(data, effort), n) == data);
        }
    }
}

TEST_CASE("higher effort is never longer") {
    // best-of-levels construction makes this exact
    const auto structured = [] {
        std::vector<uint8_t> v;
        Rng rng(3);
        for (int i = 0; i < 50000; ++i)
            v.push_back(static_cast<uint8_t>((i % 251) ^ (rng.next_below(4) == 0 ? 1 : 0)));
        return v;
    }();
    size_t prev = ~size_t(0);
    for (int effort = 1; effort <= 9; ++effort) {
        const size_t sz = deflate_compress(structured, effort).size();
        CHECK(sz <= prev);
        prev = sz;
    }
    CHECK_THROWS_AS(deflate_compress(structured, 0), parameter_error);
    CHECK_THROWS_AS(deflate_compress(structured, 10), parameter_error);
}

TEST_CASE("hand-built stored block inflates verbatim") {
    // RFC 1951 block type 00: BFINAL=1 BTYPE=00, byte-aligned LEN/NLEN
    const std::vector<uint8_t> payload{'s', 't', 'o', 'r', 'e', 'd', '!', 0x00, 0xFF};
    std::vector<uint8_t> stream;
    stream.push_back(0x01); // BFINAL=1, BTYPE=00, padding
    const uint16_t len = static_cast<uint16_t>(payload.size());
    stream.push_back(static_cast<uint8_t>(len & 0xff));
    stream.push_back(static_cast<uint8_t>(len >> 8));
    stream.push_back(static_cast<uint8_t>(~len & 0xff));
    stream.push_back(static_cast<uint8_t>((~len >> 8) & 0xff));
    stream.insert(stream.end(), payload.begin(), payload.end());
    CHECK(inflate(stream) == payload);
}

TEST_CASE("truncated stream fails with a decode error, never partial output") {
    const auto data = random_bytes(77, 20000);
    auto stream = deflate_compress(data, 6);
    stream.resize(stream.size() / 3);
    CHECK_THROWS_AS(inflate(stream), decode_error);
}

TEST_CASE("garbage stream reports an offset") {
    std::vector<uint8_t> garbage{0x07, 0xde, 0xad, 0xbe, 0xef};
    try {
        inflate(garbage);
        FAIL("expected decode_error");
    } catch (const decode_error& e) {
        CHECK(e.byte_offset <= garbage.size());
    }
}

TEST_CASE("expected size is enforced") {
    const auto data = random_bytes(4, 1000);
    const auto stream = deflate_compress(data, 6);
    CHECK_THROWS_AS(inflate(stream, 999), decode_error);
    CHECK_THROWS_AS(inflate(stream, 1001), decode_error);
    CHECK(inflate(stream, 1000) == data);
}
