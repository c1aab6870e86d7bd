#include "pixeldepth/ingest.hpp"

#include <fstream>

#include "pixeldepth/pngread.hpp"
#include "pixeldepth/pnm.hpp"

namespace pixeldepth {

Image binarize(const Image& gray) {
    Image out(gray.width, gray.height, 1);
    if (gray.depth == 1) {
        out.pixels = gray.pixels;
        return out;
    }
    for (size_t p = 0; p < gray.area(); ++p)
        out.pixels[p] = gray.pixels[p] < 128 ? kBlack : kWhite;
    return out;
}

Image center_crop_scale(const Image& img, int side) {
    if (side < 1) throw parameter_error("target size must be >= 1");
    const int crop = std::min(img.width, img.height);
    const int x0 = (img.width - crop) / 2;
    const int y0 = (img.height - crop) / 2;
    Image out(side, side, img.depth);
    for (int y = 0; y < side; ++y) {
        const int sy = y0 + static_cast<int>(static_cast<int64_t>(y) * crop / side);
        for (int x = 0; x < side; ++x) {
            const int sx = x0 + static_cast<int>(static_cast<int64_t>(x) * crop / side);
            out.set(x, y, img.at(sx, sy));
        }
    }
    return out;
}

IngestedImage ingest_file(const std::filesystem::path& path, const IngestOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error(path.string() + ": cannot open");
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());

    Image loaded;
    std::string loader;
    if (looks_like_png(bytes)) {
        loaded = parse_png_gray(bytes, path.string());
        loader = "png->luminance(bt709)";
    } else if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '6') {
        loaded = parse_pnm(bytes, path.string());
        loader = std::string("pnm(P") + static_cast<char>(bytes[1]) + ")";
    } else {
        throw format_error(path.string() +
                           ": unsupported format (supported: PBM P1/P4, PGM P2/P5, PNG)");
    }

    IngestedImage out;
    out.source = path.string();
    out.transform = loader;

    Image work = std::move(loaded);
    if (opts.target_size > 0 &&
        (work.width != opts.target_size || work.height != opts.target_size)) {
        work = center_crop_scale(work, opts.target_size);
        out.transform += "+crop_scale(" + std::to_string(opts.target_size) + ")";
    }
    if (work.depth != 1) {
        work = binarize(work);
        out.transform += "+threshold(<128)";
    }
    out.image = std::move(work);
    return out;
}

} // namespace pixeldepth
