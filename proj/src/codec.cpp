#include "pixeldepth/codec.hpp"

#include <array>
#include <cstring>

#include "pixeldepth/deflate.hpp"
#include "pixeldepth/filters.hpp"
#include "pixeldepth/rle.hpp"

namespace pixeldepth {

namespace {

std::vector<std::vector<uint8_t>> pack_rows(const Image& img) {
    const size_t rb = packed_row_bytes(img.width, img.depth);
    std::vector<std::vector<uint8_t>> rows(img.height, std::vector<uint8_t>(rb));
    for (int y = 0; y < img.height; ++y) pack_row(img, y, rows[y].data());
    return rows;
}

std::vector<uint8_t> serialize_scanlines(const std::vector<std::vector<uint8_t>>& rows,
                                         const std::vector<FilterId>& choices) {
    const size_t rb = rows.empty() ? 0 : rows[0].size();
    std::vector<uint8_t> stream;
    stream.reserve(rows.size() * (rb + 1));
    std::vector<uint8_t> zero(rb, 0);
    for (size_t y = 0; y < rows.size(); ++y) {
        const auto& prev = y == 0 ? zero : rows[y - 1];
        stream.push_back(static_cast<uint8_t>(choices[y]));
        const auto filtered = apply_filter(rows[y], prev, choices[y]);
        stream.insert(stream.end(), filtered.begin(), filtered.end());
    }
    return stream;
}

std::vector<FilterId> heuristic_plan(const std::vector<std::vector<uint8_t>>& rows) {
    std::vector<FilterId> plan(rows.size());
    const std::vector<uint8_t> zero(rows.empty() ? 0 : rows[0].size(), 0);
    for (size_t y = 0; y < rows.size(); ++y)
        plan[y] = choose_filter_heuristic(rows[y], y == 0 ? zero : rows[y - 1]);
    return plan;
}

// per-row greedy: the filter whose filtered bytes deflate smallest in
// isolation (fast level-1 probe)
std::vector<FilterId> greedy_plan(const std::vector<std::vector<uint8_t>>& rows) {
    std::vector<FilterId> plan(rows.size());
    const std::vector<uint8_t> zero(rows.empty() ? 0 : rows[0].size(), 0);
    for (size_t y = 0; y < rows.size(); ++y) {
        const auto& prev = y == 0 ? zero : rows[y - 1];
        size_t best_size = ~size_t(0);
        for (int f = 0; f < kFilterCount; ++f) {
            const auto filtered = apply_filter(rows[y], prev, static_cast<FilterId>(f));
            const size_t sz = deflate_once(filtered, 1, DeflateStrategy::standard).size();
            if (sz < best_size) {
                best_size = sz;
                plan[y] = static_cast<FilterId>(f);
            }
        }
    }
    return plan;
}

} // namespace

namespace {

void search_polarity(const std::vector<std::vector<uint8_t>>& rows, bool complemented,
                     CompressedBlob& blob) {
    std::vector<std::vector<FilterId>> plans;
    plans.emplace_back(rows.size(), FilterId::none);
    plans.emplace_back(rows.size(), FilterId::sub);
    plans.emplace_back(rows.size(), FilterId::up);
    plans.emplace_back(rows.size(), FilterId::paeth);
    plans.push_back(heuristic_plan(rows));
    plans.push_back(greedy_plan(rows));

    constexpr std::array<DeflateStrategy, 4> strategies = {
        DeflateStrategy::standard, DeflateStrategy::filtered, DeflateStrategy::rle,
        DeflateStrategy::huffman_only};

    for (const auto& plan : plans) {
        const auto stream = serialize_scanlines(rows, plan);
        for (auto strategy : strategies) {
            auto candidate = deflate_once(stream, kMaxEffort, strategy);
            if (candidate.size() < blob.payload.size()) {
                blob.payload = std::move(candidate);
                blob.filter_choices = plan;
                blob.complemented = complemented;
            }
        }
        // level sweep with the default strategy catches the rare case where
        // a lower level beats level 9
        auto swept = deflate_compress(stream, kMaxEffort);
        if (swept.size() < blob.payload.size()) {
            blob.payload = std::move(swept);
            blob.filter_choices = plan;
            blob.complemented = complemented;
        }
    }
}

} // namespace

CompressedBlob compress_image(const Image& img, bool optimize) {
    validate(img);
    const auto rows = pack_rows(img);

    CompressedBlob blob;
    blob.codec_id = CodecId::filtered_deflate;
    blob.original_width = img.width;
    blob.original_height = img.height;
    blob.original_depth = img.depth;

    const auto heuristic = heuristic_plan(rows);
    const auto base_stream = serialize_scanlines(rows, heuristic);
    blob.payload = deflate_compress(base_stream, 6);
    blob.filter_choices = heuristic;
    blob.complemented = false;
    if (!optimize) return blob;

    search_polarity(rows, false, blob);
    // searching the complemented stream too makes the result exactly
    // invariant under image inversion (the candidate sets coincide)
    auto flipped = rows;
    const int tail_bits = img.depth == 1 ? img.width & 7 : 0;
    for (auto& row : flipped) {
        for (auto& b : row) b = static_cast<uint8_t>(~b);
        if (tail_bits) row.back() &= static_cast<uint8_t>(0xFFu << (8 - tail_bits));
    }
    search_polarity(flipped, true, blob);
    return blob;
}

Image decompress_image(const CompressedBlob& blob) {
    return decompress_image(blob, nullptr);
}

Image decompress_image(const CompressedBlob& blob, std::vector<FilterId>* recovered) {
    if (blob.codec_id == CodecId::toy_rle) return rle_decompress(blob);

    if (blob.original_width < 1 || blob.original_height < 1)
        throw consistency_error("blob has invalid geometry");
    if (!blob.filter_choices.empty() &&
        blob.filter_choices.size() != static_cast<size_t>(blob.original_height))
        throw consistency_error("filter_choices length does not match height");

    const size_t rb = packed_row_bytes(blob.original_width, blob.original_depth);
    const size_t stream_size = (rb + 1) * static_cast<size_t>(blob.original_height);
    auto stream = inflate(blob.payload, stream_size);

    Image img(blob.original_width, blob.original_height, blob.original_depth);
    // unconditional polarity mask: the timed decode path does identical work
    // whether or not the stream was stored complemented
    const uint8_t mask = blob.complemented ? 0xFF : 0x00;
    static const std::vector<uint8_t> zero_row(1 << 15, 0);
    const uint8_t* prev = zero_row.data();
    if (recovered) {
        recovered->clear();
        recovered->reserve(blob.original_height);
    }
    // scanlines are reconstructed in place inside the inflated stream
    for (int y = 0; y < blob.original_height; ++y) {
        uint8_t* scanline = stream.data() + static_cast<size_t>(y) * (rb + 1);
        const uint8_t fid = *scanline;
        if (fid >= kFilterCount)
            throw decode_error("invalid filter id in scanline " + std::to_string(y),
                               static_cast<size_t>(y) * (rb + 1));
        if (!blob.filter_choices.empty() &&
            blob.filter_choices[y] != static_cast<FilterId>(fid))
            throw consistency_error("recorded filter choice disagrees with stream");
        if (recovered) recovered->push_back(static_cast<FilterId>(fid));
        uint8_t* row = scanline + 1;
        unfilter_in_place(row, prev, rb, static_cast<FilterId>(fid));

        uint8_t* dst = img.pixels.data() + static_cast<size_t>(y) * blob.original_width;
        if (blob.original_depth == 8) {
            for (size_t i = 0; i < rb; ++i) dst[i] = row[i] ^ mask;
        } else {
            const int full = blob.original_width / 8;
            for (int b = 0; b < full; ++b) {
                const uint8_t v = row[b] ^ mask;
                dst[0] = (v >> 7) & 1u;
                dst[1] = (v >> 6) & 1u;
                dst[2] = (v >> 5) & 1u;
                dst[3] = (v >> 4) & 1u;
                dst[4] = (v >> 3) & 1u;
                dst[5] = (v >> 2) & 1u;
                dst[6] = (v >> 1) & 1u;
                dst[7] = v & 1u;
                dst += 8;
            }
            if (8 * full < blob.original_width) {
                const uint8_t tail = row[full] ^ mask;
                for (int x = 8 * full; x < blob.original_width; ++x)
                    *dst++ = (tail >> (7 - (x & 7))) & 1u;
            }
        }
        prev = row;
    }
    return img;
}

CompressedBlob compress_with(const Image& img, CodecId codec, bool optimize) {
    return codec == CodecId::toy_rle ? rle_compress(img) : compress_image(img, optimize);
}

uint64_t k_estimate(const Image& img, CodecId codec, bool optimize) {
    return compress_with(img, codec, optimize).bit_length();
}

} // namespace pixeldepth
