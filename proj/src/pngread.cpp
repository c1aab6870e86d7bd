#include "pixeldepth/pngread.hpp"

#include <zlib.h>

#include <array>
#include <cstring>
#include <fstream>

#include "pixeldepth/deflate.hpp"
#include "pixeldepth/filters.hpp"

namespace pixeldepth {

namespace {

const uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

uint32_t be32(const uint8_t* p) {
    return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
           (static_cast<uint32_t>(p[2]) << 8) | p[3];
}

uint8_t luminance(uint8_t r, uint8_t g, uint8_t b) {
    return static_cast<uint8_t>(0.2126 * r + 0.7152 * g + 0.0722 * b + 0.5);
}

} // namespace

bool looks_like_png(const std::vector<uint8_t>& bytes) {
    return bytes.size() >= 8 && std::memcmp(bytes.data(), kSignature, 8) == 0;
}

Image parse_png_gray(const std::vector<uint8_t>& bytes, const std::string& origin) {
    auto fail = [&origin](const std::string& what) -> void {
        throw format_error(origin + ": " + what);
    };

    if (!looks_like_png(bytes)) fail("not a PNG file");

    uint32_t width = 0, height = 0;
    int bit_depth = 0, color_type = -1;
    std::vector<uint8_t> idat;
    std::vector<std::array<uint8_t, 3>> palette;
    bool saw_ihdr = false, saw_iend = false;

    size_t pos = 8;
    while (pos + 8 <= bytes.size() && !saw_iend) {
        const uint32_t len = be32(bytes.data() + pos);
        if (pos + 12 + len > bytes.size()) fail("truncated chunk");
        const char* type = reinterpret_cast<const char*>(bytes.data() + pos + 4);
        const uint8_t* data = bytes.data() + pos + 8;

        const uint32_t expect_crc = be32(data + len);
        const auto actual_crc = static_cast<uint32_t>(
            crc32(crc32(0L, bytes.data() + pos + 4, 4), data, len));
        if (expect_crc != actual_crc) fail("chunk CRC mismatch");

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) fail("bad IHDR length");
            width = be32(data);
            height = be32(data + 4);
            bit_depth = data[8];
            color_type = data[9];
            if (data[10] != 0 || data[11] != 0) fail("unsupported compression/filter method");
            if (data[12] != 0) fail("interlaced PNG not supported");
            saw_ihdr = true;
        } else if (std::memcmp(type, "PLTE", 4) == 0) {
            if (len % 3 != 0) fail("bad PLTE length");
            for (uint32_t i = 0; i < len; i += 3)
                palette.push_back({data[i], data[i + 1], data[i + 2]});
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        } // ancillary chunks skipped
        pos += 12 + len;
    }
    if (!saw_ihdr) fail("missing IHDR");
    if (idat.empty()) fail("missing IDAT");
    if (width < 1 || height < 1 || width > (1u << 15) || height > (1u << 15))
        fail("unsupported geometry");

    int channels;
    switch (color_type) {
        case 0: channels = 1; break; // grayscale
        case 2: channels = 3; break; // RGB
        case 3: channels = 1; break; // palette
        case 6: channels = 4; break; // RGBA
        default: fail("unsupported color type (supported: gray, RGB, palette, RGBA)");
    }
    if (color_type == 0) {
        if (bit_depth != 8 && bit_depth != 1) fail("unsupported grayscale bit depth");
    } else if (bit_depth != 8) {
        fail("unsupported bit depth (8 expected)");
    }
    if (color_type == 3 && palette.empty()) fail("palette image without PLTE");

    const size_t row_bits = static_cast<size_t>(width) * channels * bit_depth;
    const size_t rb = (row_bits + 7) / 8;
    const size_t expected = (rb + 1) * height;
    std::vector<uint8_t> stream;
    try {
        stream = inflate_zlib(idat);
    } catch (const decode_error& e) {
        fail(std::string("IDAT: ") + e.what());
    }
    if (stream.size() != expected) fail("decoded pixel data has the wrong size");

    // un-filter with the shared five-filter bank; the predictor unit is the
    // pixel byte stride
    const size_t bpp = std::max<size_t>(1, static_cast<size_t>(channels) * bit_depth / 8);
    Image img(static_cast<int>(width), static_cast<int>(height), 8);
    std::vector<uint8_t> prev(rb, 0);
    for (uint32_t y = 0; y < height; ++y) {
        const uint8_t fid = stream[y * (rb + 1)];
        if (fid >= kFilterCount) fail("invalid PNG filter byte");
        std::span<const uint8_t> filtered(stream.data() + y * (rb + 1) + 1, rb);

        // PNG filters compare whole pixels; replicate by running the bank on
        // a bpp-strided view
        std::vector<uint8_t> row(rb);
        for (size_t i = 0; i < rb; ++i) {
            const uint8_t left = i >= bpp ? row[i - bpp] : 0;
            const uint8_t above = prev[i];
            const uint8_t ul = i >= bpp ? prev[i - bpp] : 0;
            uint8_t pred = 0;
            switch (static_cast<FilterId>(fid)) {
                case FilterId::none: pred = 0; break;
                case FilterId::sub: pred = left; break;
                case FilterId::up: pred = above; break;
                case FilterId::average:
                    pred = static_cast<uint8_t>((static_cast<int>(left) + above) / 2);
                    break;
                case FilterId::paeth: pred = paeth_predict(left, above, ul); break;
            }
            row[i] = static_cast<uint8_t>(filtered[i] + pred);
        }

        for (uint32_t x = 0; x < width; ++x) {
            uint8_t v = 0;
            if (color_type == 0 && bit_depth == 1) {
                v = ((row[x >> 3] >> (7 - (x & 7))) & 1u) ? 255 : 0;
            } else if (color_type == 0) {
                v = row[x];
            } else if (color_type == 3) {
                const uint8_t idx = row[x];
                if (idx >= palette.size()) fail("palette index out of range");
                const auto& rgb = palette[idx];
                v = luminance(rgb[0], rgb[1], rgb[2]);
            } else {
                const uint8_t* px = row.data() + static_cast<size_t>(x) * channels;
                v = luminance(px[0], px[1], px[2]);
            }
            img.set(static_cast<int>(x), static_cast<int>(y), v);
        }
        prev = std::move(row);
    }
    return img;
}

Image read_png_gray(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error(path.string() + ": cannot open");
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return parse_png_gray(bytes, path.string());
}

} // namespace pixeldepth
