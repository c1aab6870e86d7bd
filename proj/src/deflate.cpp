#include "pixeldepth/deflate.hpp"

#include <zlib.h>

#include <cstring>
#include <string>

namespace pixeldepth {

namespace {

int to_zlib_strategy(DeflateStrategy s) {
    switch (s) {
        case DeflateStrategy::standard: return Z_DEFAULT_STRATEGY;
        case DeflateStrategy::filtered: return Z_FILTERED;
        case DeflateStrategy::rle: return Z_RLE;
        case DeflateStrategy::huffman_only: return Z_HUFFMAN_ONLY;
    }
    return Z_DEFAULT_STRATEGY;
}

std::vector<uint8_t> run_inflate(std::span<const uint8_t> stream, int window_bits,
                                 size_t expected_size) {
    z_stream zs{};
    if (inflateInit2(&zs, window_bits) != Z_OK)
        throw decode_error("inflate init failed");

    std::vector<uint8_t> out;
    out.resize(expected_size ? expected_size : std::max<size_t>(4 * stream.size(), 1024));

    zs.next_in = const_cast<Bytef*>(stream.data());
    zs.avail_in = static_cast<uInt>(stream.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());

    int rc;
    for (;;) {
        rc = ::inflate(&zs, Z_FINISH);
        if (rc == Z_STREAM_END) break;
        if (rc == Z_BUF_ERROR && zs.avail_out == 0 && !expected_size) {
            const size_t used = out.size();
            out.resize(out.size() * 2);
            zs.next_out = out.data() + used;
            zs.avail_out = static_cast<uInt>(out.size() - used);
            continue;
        }
        const size_t offset = zs.next_in - stream.data();
        std::string msg = zs.msg ? zs.msg : "malformed deflate stream";
        if (rc == Z_BUF_ERROR && zs.avail_out == 0)
            msg = "decoded data exceeds expected size";
        else if (rc == Z_BUF_ERROR || (rc == Z_OK && zs.avail_in == 0))
            msg = "truncated deflate stream";
        inflateEnd(&zs);
        throw decode_error(msg + " (input offset " + std::to_string(offset) + ")", offset);
    }
    if (zs.avail_in != 0) {
        const size_t offset = zs.next_in - stream.data();
        inflateEnd(&zs);
        throw decode_error("trailing bytes after deflate stream", offset);
    }
    out.resize(zs.total_out);
    inflateEnd(&zs);
    if (expected_size && out.size() != expected_size)
        throw decode_error("decoded size " + std::to_string(out.size()) + ", expected " +
                           std::to_string(expected_size));
    return out;
}

} // namespace

std::vector<uint8_t> deflate_once(std::span<const uint8_t> data, int level, DeflateStrategy s) {
    z_stream zs{};
    if (deflateInit2(&zs, level, Z_DEFLATED, -15, 9, to_zlib_strategy(s)) != Z_OK)
        throw std::runtime_error("deflate init failed");
    std::vector<uint8_t> out(deflateBound(&zs, static_cast<uLong>(data.size())));
    zs.next_in = const_cast<Bytef*>(data.data());
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = ::deflate(&zs, Z_FINISH);
    if (rc != Z_STREAM_END) {
        deflateEnd(&zs);
        throw std::runtime_error("deflate failed");
    }
    out.resize(zs.total_out);
    deflateEnd(&zs);
    return out;
}

std::vector<uint8_t> deflate_compress(std::span<const uint8_t> data, int effort) {
    if (effort < kMinEffort || effort > kMaxEffort)
        throw parameter_error("deflate effort must be in [1, 9]");
    std::vector<uint8_t> best;
    for (int level = 1; level <= effort; ++level) {
        auto candidate = deflate_once(data, level, DeflateStrategy::standard);
        if (best.empty() || candidate.size() < best.size()) best = std::move(candidate);
    }
    return best;
}

std::vector<uint8_t> inflate(std::span<const uint8_t> stream, size_t expected_size) {
    return run_inflate(stream, -15, expected_size);
}

std::vector<uint8_t> inflate_zlib(std::span<const uint8_t> stream) {
    return run_inflate(stream, 15, 0);
}

const char* zlib_version_string() { return zlibVersion(); }

} // namespace pixeldepth
