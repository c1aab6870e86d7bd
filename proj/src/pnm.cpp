#include "pixeldepth/pnm.hpp"

#include <fstream>

namespace pixeldepth {

namespace {

struct Cursor {
    const std::vector<uint8_t>& bytes;
    size_t pos = 0;
    const std::string& origin;

    [[noreturn]] void fail(const std::string& what) const {
        throw format_error(origin + ": " + what);
    }

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            const char c = static_cast<char>(bytes[pos]);
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int() {
        skip_space_and_comments();
        if (pos >= bytes.size()) fail("unexpected end of header");
        long v = 0;
        bool any = false;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1 << 28) fail("numeric field out of range");
            ++pos;
            any = true;
        }
        if (!any) fail("expected an integer");
        return v;
    }
};

} // namespace

Image parse_pnm(const std::vector<uint8_t>& bytes, const std::string& origin) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw format_error(origin + ": not a PNM file (supported: P1/P2/P4/P5)");
    const char kind = static_cast<char>(bytes[1]);
    Cursor cur{bytes, 2, origin};

    const bool plain = kind == '1' || kind == '2';
    const bool raw = kind == '4' || kind == '5';
    const bool bilevel = kind == '1' || kind == '4';
    if (!plain && !raw)
        cur.fail(std::string("unsupported PNM type P") + kind + " (supported: P1/P2/P4/P5)");

    const long w = cur.next_int();
    const long h = cur.next_int();
    if (w < 1 || h < 1) cur.fail("invalid dimensions");
    long maxval = 1;
    if (!bilevel) {
        maxval = cur.next_int();
        if (maxval < 1 || maxval > 255) cur.fail("unsupported maxval (expected <= 255)");
    }

    Image img(static_cast<int>(w), static_cast<int>(h), bilevel ? 1 : 8);

    if (kind == '1') {
        for (size_t p = 0; p < img.area(); ++p) {
            cur.skip_space_and_comments();
            if (cur.pos >= bytes.size()) cur.fail("truncated pixel data");
            const char c = static_cast<char>(bytes[cur.pos++]);
            if (c != '0' && c != '1') cur.fail("P1 pixels must be 0 or 1");
            img.pixels[p] = c == '1' ? kBlack : kWhite;
        }
    } else if (kind == '2') {
        for (size_t p = 0; p < img.area(); ++p) {
            const long v = cur.next_int();
            if (v > maxval) cur.fail("sample exceeds maxval");
            img.pixels[p] = static_cast<uint8_t>(v * 255 / maxval);
        }
    } else {
        // single whitespace byte separates header from raw data
        if (cur.pos >= bytes.size()) cur.fail("truncated raw data");
        ++cur.pos;
        if (kind == '4') {
            const size_t rb = (static_cast<size_t>(w) + 7) / 8;
            if (bytes.size() - cur.pos < rb * h) cur.fail("truncated raw data");
            for (int y = 0; y < img.height; ++y) {
                const uint8_t* row = bytes.data() + cur.pos + static_cast<size_t>(y) * rb;
                for (int x = 0; x < img.width; ++x)
                    img.set(x, y, (row[x >> 3] >> (7 - (x & 7))) & 1u);
            }
        } else {
            if (bytes.size() - cur.pos < img.area()) cur.fail("truncated raw data");
            for (size_t p = 0; p < img.area(); ++p) {
                const uint8_t v = bytes[cur.pos + p];
                if (v > maxval) cur.fail("sample exceeds maxval");
                img.pixels[p] = static_cast<uint8_t>(static_cast<long>(v) * 255 / maxval);
            }
        }
    }
    return img;
}

Image read_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error(path.string() + ": cannot open");
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return parse_pnm(bytes, path.string());
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw format_error(path.string() + ": cannot open for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw format_error(path.string() + ": write failed");
}

} // namespace

void write_pbm(const Image& img, const std::filesystem::path& path, bool raw) {
    if (img.depth != 1) throw parameter_error("PBM requires a depth-1 image");
    std::string out;
    out += raw ? "P4\n" : "P1\n";
    out += std::to_string(img.width) + " " + std::to_string(img.height) + "\n";
    if (raw) {
        const size_t rb = packed_row_bytes(img.width, 1);
        std::vector<uint8_t> row(rb);
        for (int y = 0; y < img.height; ++y) {
            pack_row(img, y, row.data());
            out.append(reinterpret_cast<const char*>(row.data()), rb);
        }
    } else {
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                out += img.at(x, y) ? '1' : '0';
                out += x + 1 == img.width ? '\n' : ' ';
            }
        }
    }
    write_file(path, out);
}

void write_pgm(const Image& img, const std::filesystem::path& path, bool raw) {
    if (img.depth != 8) throw parameter_error("PGM writer expects a depth-8 image");
    std::string out;
    out += raw ? "P5\n" : "P2\n";
    out += std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    if (raw) {
        out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    } else {
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                out += std::to_string(img.at(x, y));
                out += x + 1 == img.width ? '\n' : ' ';
            }
    }
    write_file(path, out);
}

void write_pnm(const Image& img, const std::filesystem::path& path, bool raw) {
    if (img.depth == 1)
        write_pbm(img, path, raw);
    else
        write_pgm(img, path, raw);
}

} // namespace pixeldepth
