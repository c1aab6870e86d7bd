#include "pixeldepth/rle.hpp"

namespace pixeldepth {

namespace {

class BitWriter {
public:
    explicit BitWriter(std::vector<uint8_t>& out) : out_(out) {}

    void put(bool bit) {
        if (fill_ == 0) out_.push_back(0);
        if (bit) out_.back() |= static_cast<uint8_t>(0x80u >> fill_);
        fill_ = (fill_ + 1) & 7;
    }

    void put_bits(uint64_t value, int count) { // MSB first
        for (int i = count - 1; i >= 0; --i) put((value >> i) & 1u);
    }

private:
    std::vector<uint8_t>& out_;
    int fill_ = 0;
};

class BitReader {
public:
    BitReader(const std::vector<uint8_t>& in) : in_(in) {}

    bool get() {
        if (pos_ >= in_.size() * 8) throw decode_error("truncated rle payload", in_.size());
        const bool bit = (in_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
        ++pos_;
        return bit;
    }

    uint64_t get_bits(int count) {
        uint64_t v = 0;
        for (int i = 0; i < count; ++i) v = (v << 1) | (get() ? 1u : 0u);
        return v;
    }

    size_t bits_read() const { return pos_; }

private:
    const std::vector<uint8_t>& in_;
    size_t pos_ = 0;
};

void write_run_length(BitWriter& w, uint64_t n) {
    if (n <= kRleUnaryCap) {
        for (uint64_t i = 1; i < n; ++i) w.put(true);
        w.put(false);
    } else {
        for (uint64_t i = 0; i < kRleUnaryCap; ++i) w.put(true);
        w.put_bits(n - kRleUnaryCap - 1, kRleEscapeBits);
    }
}

uint64_t read_run_length(BitReader& r) {
    uint64_t ones = 0;
    while (ones < kRleUnaryCap && r.get()) ++ones;
    if (ones < kRleUnaryCap) return ones + 1;
    return kRleUnaryCap + 1 + r.get_bits(kRleEscapeBits);
}

} // namespace

CompressedBlob rle_compress(const Image& img) {
    if (img.depth != 1) throw unsupported_depth_error("toy_rle supports depth-1 images only");
    validate(img);
    CompressedBlob blob;
    blob.codec_id = CodecId::toy_rle;
    blob.original_width = img.width;
    blob.original_height = img.height;
    blob.original_depth = 1;

    uint32_t n_runs = 1;
    for (size_t i = 1; i < img.pixels.size(); ++i)
        n_runs += (img.pixels[i] != img.pixels[i - 1]);

    BitWriter w(blob.payload);
    w.put(img.pixels[0] != kWhite);
    w.put_bits(n_runs, 32);
    uint64_t run = 1;
    for (size_t i = 1; i < img.pixels.size(); ++i) {
        if (img.pixels[i] == img.pixels[i - 1]) {
            ++run;
        } else {
            write_run_length(w, run);
            run = 1;
        }
    }
    write_run_length(w, run);
    return blob;
}

Image rle_decompress(const CompressedBlob& blob) {
    if (blob.codec_id != CodecId::toy_rle) throw decode_error("blob is not toy_rle");
    if (blob.original_depth != 1) throw decode_error("toy_rle blob must have depth 1");
    if (blob.payload.empty()) throw decode_error("empty rle payload");
    Image img(blob.original_width, blob.original_height, 1);
    const uint64_t area = img.area();

    BitReader r(blob.payload);
    uint8_t value = r.get() ? kBlack : kWhite;
    const uint64_t n_runs = r.get_bits(32);
    uint64_t produced = 0;
    for (uint64_t i = 0; i < n_runs; ++i) {
        const uint64_t run = read_run_length(r);
        if (produced + run > area)
            throw consistency_error("rle runs overflow image area");
        std::fill(img.pixels.begin() + produced, img.pixels.begin() + produced + run, value);
        produced += run;
        value = static_cast<uint8_t>(1 - value);
    }
    if (produced != area)
        throw consistency_error("rle runs do not sum to image area");
    // only byte-padding may remain
    if ((blob.payload.size() * 8 - r.bits_read()) >= 8)
        throw consistency_error("rle payload has trailing data beyond image area");
    return img;
}

std::vector<std::pair<uint8_t, uint64_t>> rle_runs(const CompressedBlob& blob) {
    if (blob.codec_id != CodecId::toy_rle) throw decode_error("blob is not toy_rle");
    const uint64_t area =
        static_cast<uint64_t>(blob.original_width) * static_cast<uint64_t>(blob.original_height);
    BitReader r(blob.payload);
    uint8_t value = r.get() ? kBlack : kWhite;
    const uint64_t n_runs = r.get_bits(32);
    std::vector<std::pair<uint8_t, uint64_t>> runs;
    uint64_t produced = 0;
    for (uint64_t i = 0; i < n_runs; ++i) {
        const uint64_t run = read_run_length(r);
        if (produced + run > area) throw consistency_error("rle runs overflow image area");
        runs.emplace_back(value, run);
        produced += run;
        value = static_cast<uint8_t>(1 - value);
    }
    if (produced != area) throw consistency_error("rle runs do not sum to image area");
    return runs;
}

} // namespace pixeldepth
