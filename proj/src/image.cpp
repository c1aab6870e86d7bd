#include "pixeldepth/image.hpp"

namespace pixeldepth {

Image::Image(int w, int h, int d, uint8_t fill)
    : width(w), height(h), depth(d),
      pixels(static_cast<size_t>(w > 0 ? w : 0) * static_cast<size_t>(h > 0 ? h : 0), fill) {
    validate(*this);
}

size_t Image::ink() const {
    size_t n = 0;
    for (uint8_t v : pixels) n += (v != kWhite);
    return n;
}

void validate(const Image& img) {
    if (img.width < 1 || img.height < 1)
        throw dimension_error("image dimensions must be >= 1");
    if (img.depth != 1 && img.depth != 8)
        throw parameter_error("image depth must be 1 or 8");
    if (img.pixels.size() != img.area())
        throw dimension_error("pixel count does not match width*height");
    const uint8_t maxv = img.max_value();
    for (uint8_t v : img.pixels)
        if (v > maxv) throw parameter_error("pixel value exceeds 2^depth - 1");
}

size_t packed_row_bytes(int width, int depth) {
    return depth == 1 ? (static_cast<size_t>(width) + 7) / 8 : static_cast<size_t>(width);
}

void pack_row(const Image& img, int y, uint8_t* out) {
    if (img.depth == 8) {
        const uint8_t* src = img.pixels.data() + static_cast<size_t>(y) * img.width;
        std::copy(src, src + img.width, out);
        return;
    }
    const size_t rb = packed_row_bytes(img.width, 1);
    std::fill(out, out + rb, 0);
    const uint8_t* src = img.pixels.data() + static_cast<size_t>(y) * img.width;
    for (int x = 0; x < img.width; ++x)
        if (src[x]) out[x >> 3] |= static_cast<uint8_t>(0x80u >> (x & 7));
}

void unpack_row(Image& img, int y, const uint8_t* in) {
    uint8_t* dst = img.pixels.data() + static_cast<size_t>(y) * img.width;
    if (img.depth == 8) {
        std::copy(in, in + img.width, dst);
        return;
    }
    for (int x = 0; x < img.width; ++x)
        dst[x] = (in[x >> 3] >> (7 - (x & 7))) & 1u;
}

uint64_t content_hash(const Image& img) {
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<uint64_t>(img.width));
    mix(static_cast<uint64_t>(img.height));
    mix(static_cast<uint64_t>(img.depth));
    for (uint8_t v : img.pixels) {
        h ^= v;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string to_string(const Image& img) {
    std::string s;
    const int w = std::min(img.width, 72);
    const int h = std::min(img.height, 32);
    s.reserve(static_cast<size_t>(w + 1) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) s += img.at(x, y) ? '#' : '.';
        s += '\n';
    }
    return s;
}

} // namespace pixeldepth
