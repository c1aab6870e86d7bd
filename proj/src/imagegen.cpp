#include "pixeldepth/imagegen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pixeldepth/rng.hpp"

namespace pixeldepth {

const char* to_string(SeriesKind k) {
    switch (k) {
        case SeriesKind::uniform: return "uniform";
        case SeriesKind::random_threshold: return "random_threshold";
        case SeriesKind::block_insertion: return "block_insertion";
        case SeriesKind::line_series: return "line_series";
        case SeriesKind::rule30_family: return "rule30_family";
        case SeriesKind::tiling: return "tiling";
    }
    return "?";
}

SeriesKind series_kind_from_string(const std::string& s) {
    if (s == "uniform") return SeriesKind::uniform;
    if (s == "random_threshold") return SeriesKind::random_threshold;
    if (s == "block_insertion") return SeriesKind::block_insertion;
    if (s == "line_series") return SeriesKind::line_series;
    if (s == "rule30_family") return SeriesKind::rule30_family;
    if (s == "tiling") return SeriesKind::tiling;
    throw parameter_error("unknown series kind: " + s);
}

double SeriesSpec::param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) throw dimension_error("dimensions must be >= 1");
    if (width > kMaxImageSide || height > kMaxImageSide ||
        static_cast<size_t>(width) * height > kMaxImageArea)
        throw dimension_error("image exceeds configured maximum size");
}

void check_spec(const SeriesSpec& spec, SeriesKind expected) {
    if (spec.kind != expected) throw parameter_error("series spec kind mismatch");
    if (spec.count < 1) throw parameter_error("series count must be >= 1");
    check_dims(spec.width, spec.height);
}

} // namespace

Image gen_uniform(int width, int height, uint8_t value) {
    check_dims(width, height);
    if (value > 1) throw parameter_error("uniform value must be 0 or 1 at depth 1");
    return Image(width, height, 1, value);
}

Image gen_random(int width, int height, uint64_t seed, double threshold) {
    check_dims(width, height);
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw parameter_error("threshold must be in [0, 1]");
    Image img(width, height, 1);
    Rng rng(seed);
    for (auto& p : img.pixels) p = rng.next_double() < threshold ? kBlack : kWhite;
    return img;
}

std::vector<Image> gen_block_series(const SeriesSpec& spec) {
    check_spec(spec, SeriesKind::block_insertion);
    const auto block_bits = static_cast<size_t>(spec.param("block_bits", 2000));
    const double density = spec.param("density", 0.5);
    // image i has i*block_bits pixels overwritten, so the last image needs
    // (count-1)*block_bits to fit
    if (block_bits * static_cast<size_t>(spec.count - 1) > static_cast<size_t>(spec.width) * spec.height)
        throw parameter_error("block insertions exceed image area");
    Image img = gen_random(spec.width, spec.height, spec.seed, density);
    std::vector<Image> out;
    out.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        if (i > 0)
            std::fill(img.pixels.begin() + (static_cast<size_t>(i) - 1) * block_bits,
                      img.pixels.begin() + static_cast<size_t>(i) * block_bits, kWhite);
        out.push_back(img);
    }
    return out;
}

namespace {

// A point on the image border, indexed by walking the perimeter clockwise
// from the top-left corner.
std::pair<int, int> border_point(uint64_t idx, int w, int h) {
    const uint64_t top = static_cast<uint64_t>(w);
    const uint64_t right = static_cast<uint64_t>(h > 1 ? h - 1 : 0);
    const uint64_t bottom = static_cast<uint64_t>(h > 1 ? (w > 1 ? w - 1 : 0) : 0);
    if (idx < top) return {static_cast<int>(idx), 0};
    idx -= top;
    if (idx < right) return {w - 1, static_cast<int>(idx) + 1};
    idx -= right;
    if (idx < bottom) return {w - 2 - static_cast<int>(idx), h - 1};
    idx -= bottom;
    return {0, h - 2 - static_cast<int>(idx)};
}

uint64_t perimeter(int w, int h) {
    if (w == 1 && h == 1) return 1;
    if (w == 1 || h == 1) return static_cast<uint64_t>(w) * h;
    return 2ull * w + 2ull * (h - 2);
}

void draw_line(Image& img, int x0, int y0, int x1, int y1) {
    // Bresenham, thickness 1
    int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        img.set(x0, y0, kBlack);
        if (x0 == x1 && y0 == y1) break;
        int e2 = 2 * err;
        if (e2 >= dy) { err += dy; x0 += sx; }
        if (e2 <= dx) { err += dx; y0 += sy; }
    }
}

} // namespace

std::vector<Image> gen_line_series(const SeriesSpec& spec) {
    check_spec(spec, SeriesKind::line_series);
    Image canvas(spec.width, spec.height, 1, kWhite);
    Rng rng(spec.seed);
    const uint64_t per = perimeter(spec.width, spec.height);
    std::vector<Image> out;
    out.reserve(spec.count);
    long long drawn = 0;
    for (int n = 0; n < spec.count; ++n) {
        const long long want = 2ll * n * n;
        for (; drawn < want; ++drawn) {
            auto [x0, y0] = border_point(rng.next_below(per), spec.width, spec.height);
            auto [x1, y1] = border_point(rng.next_below(per), spec.width, spec.height);
            while (x1 == x0 && y1 == y0 && per > 1)
                std::tie(x1, y1) = border_point(rng.next_below(per), spec.width, spec.height);
            draw_line(canvas, x0, y0, x1, y1);
        }
        out.push_back(canvas);
    }
    return out;
}

Image gen_rule30(int width, int steps) {
    if (width % 2 == 0) throw parameter_error("rule-30 width must be odd (centered seed)");
    check_dims(width, steps);
    Image img(width, steps, 1, kWhite);
    std::vector<uint8_t> row(width, 0), next(width, 0);
    row[width / 2] = 1;
    for (int t = 0; t < steps; ++t) {
        std::copy(row.begin(), row.end(), img.pixels.begin() + static_cast<size_t>(t) * width);
        if (t + 1 == steps) break;
        for (int x = 0; x < width; ++x) {
            const uint8_t l = row[(x + width - 1) % width];
            const uint8_t c = row[x];
            const uint8_t r = row[(x + 1) % width];
            next[x] = l ^ (c | r);
        }
        row.swap(next);
    }
    return img;
}

Image superpose_rotated(const Image& img) {
    if (img.width != img.height) throw dimension_error("superpose_rotated requires a square image");
    const int n = img.width;
    Image out = img;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            // clockwise 90-degree rotation: (x, y) <- (y, n-1-x)
            const uint8_t rotated = img.at(y, n - 1 - x);
            if (rotated != kWhite) out.set(x, y, kBlack);
        }
    return out;
}

Image add_noise(const Image& img, double fraction, uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw parameter_error("noise fraction must be in [0, 1]");
    Image out = img;
    const size_t k = static_cast<size_t>(std::llround(fraction * static_cast<double>(img.area())));
    if (k == 0) return out;
    // partial Fisher-Yates over pixel indices: first k entries are the sample
    std::vector<uint32_t> idx(img.area());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<uint32_t>(i);
    Rng rng(seed);
    for (size_t i = 0; i < k; ++i) {
        const size_t j = i + static_cast<size_t>(rng.next_below(idx.size() - i));
        std::swap(idx[i], idx[j]);
        out.pixels[idx[i]] = rng.next_bit() ? kBlack : kWhite;
    }
    return out;
}

Image invert(const Image& img) {
    Image out = img;
    const uint8_t maxv = img.max_value();
    for (auto& p : out.pixels) p = static_cast<uint8_t>(maxv - p);
    return out;
}

Image tile(const Image& img, int factor) {
    if (factor < 1) throw parameter_error("tile factor must be >= 1");
    check_dims(img.width * factor, img.height * factor);
    Image out(img.width * factor, img.height * factor, img.depth);
    for (int y = 0; y < out.height; ++y) {
        const uint8_t* src = img.pixels.data() + static_cast<size_t>(y % img.height) * img.width;
        uint8_t* dst = out.pixels.data() + static_cast<size_t>(y) * out.width;
        for (int t = 0; t < factor; ++t)
            std::copy(src, src + img.width, dst + static_cast<size_t>(t) * img.width);
    }
    return out;
}

std::vector<Image> gen_rule30_family(const SeriesSpec& spec) {
    check_spec(spec, SeriesKind::rule30_family);
    const int w = spec.width % 2 == 0 ? spec.width + 1 : spec.width;
    const double nf = spec.param("noise_fraction", 0.5);
    Image ca = gen_rule30(w, spec.height);
    std::vector<Image> family;
    family.push_back(ca);
    family.push_back(invert(ca));
    if (w == spec.height) {
        Image sup = superpose_rotated(ca);
        family.push_back(sup);
        family.push_back(invert(sup));
    }
    Image noisy = add_noise(ca, nf, spec.seed);
    family.push_back(noisy);
    family.push_back(invert(noisy));
    if (static_cast<size_t>(spec.count) < family.size()) family.resize(spec.count);
    return family;
}

std::vector<Image> generate_series(const SeriesSpec& spec) {
    switch (spec.kind) {
        case SeriesKind::uniform: {
            const auto value = static_cast<uint8_t>(spec.param("value", 0));
            std::vector<Image> out(spec.count, gen_uniform(spec.width, spec.height, value));
            return out;
        }
        case SeriesKind::random_threshold: {
            std::vector<Image> out;
            out.reserve(spec.count);
            for (int i = 0; i < spec.count; ++i) {
                const double thr = spec.param("threshold" + std::to_string(i),
                                              spec.param("threshold", 0.5));
                out.push_back(gen_random(spec.width, spec.height, Rng::derive(spec.seed, i), thr));
            }
            return out;
        }
        case SeriesKind::block_insertion: return gen_block_series(spec);
        case SeriesKind::line_series: return gen_line_series(spec);
        case SeriesKind::rule30_family: return gen_rule30_family(spec);
        case SeriesKind::tiling: {
            const int factor = static_cast<int>(spec.param("tile_factor", 4));
            if (factor < 1) throw parameter_error("tile_factor must be >= 1");
            int bw = spec.width / factor, bh = spec.height / factor;
            if (bw % 2 == 0) ++bw; // rule-30 base needs an odd width
            std::vector<Image> out;
            out.reserve(spec.count);
            for (int i = 0; i < spec.count; ++i)
                out.push_back(tile(gen_rule30(bw, bh), factor));
            return out;
        }
    }
    throw parameter_error("unhandled series kind");
}

std::vector<std::string> series_image_ids(const SeriesSpec& spec) {
    size_t n = static_cast<size_t>(spec.count);
    if (spec.kind == SeriesKind::rule30_family) {
        const int w = spec.width % 2 == 0 ? spec.width + 1 : spec.width;
        n = std::min(n, static_cast<size_t>(w == spec.height ? 6 : 4));
    }
    std::vector<std::string> ids;
    ids.reserve(n);
    static const char* family_tags[] = {"ca", "ca_inv", "sup", "sup_inv", "noisy", "noisy_inv"};
    for (size_t i = 0; i < n; ++i) {
        if (spec.kind == SeriesKind::rule30_family) {
            // the non-square family skips the superposed pair
            const int w = spec.width % 2 == 0 ? spec.width + 1 : spec.width;
            const size_t tag = (w == spec.height || i < 2) ? i : i + 2;
            ids.push_back(std::string(to_string(spec.kind)) + "-" + family_tags[tag]);
        } else {
            ids.push_back(std::string(to_string(spec.kind)) + "-" + std::to_string(i));
        }
    }
    return ids;
}

} // namespace pixeldepth
