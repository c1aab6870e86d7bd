#include "pixeldepth/blob.hpp"

#include <cstring>
#include <string>

namespace pixeldepth {

const char* to_string(CodecId id) {
    switch (id) {
        case CodecId::toy_rle: return "toy_rle";
        case CodecId::filtered_deflate: return "filtered_deflate";
    }
    return "?";
}

CodecId codec_id_from_string(const std::string& s) {
    if (s == "toy_rle") return CodecId::toy_rle;
    if (s == "filtered_deflate") return CodecId::filtered_deflate;
    throw parameter_error("unknown codec: " + s);
}

namespace {

constexpr char kMagic[4] = {'P', 'X', 'D', '1'};
constexpr uint8_t kVersion = 1;

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t get_u32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint64_t get_u64(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

} // namespace

std::vector<uint8_t> serialize_blob(const CompressedBlob& blob) {
    std::vector<uint8_t> out;
    out.reserve(CompressedBlob::kHeaderBytes + blob.payload.size());
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kVersion);
    out.push_back(static_cast<uint8_t>(blob.codec_id));
    out.push_back(static_cast<uint8_t>(blob.original_depth));
    out.push_back(blob.complemented ? 1 : 0);
    put_u32(out, static_cast<uint32_t>(blob.original_width));
    put_u32(out, static_cast<uint32_t>(blob.original_height));
    put_u64(out, blob.payload.size());
    out.insert(out.end(), blob.payload.begin(), blob.payload.end());
    return out;
}

CompressedBlob parse_blob(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < CompressedBlob::kHeaderBytes)
        throw decode_error("blob shorter than header", bytes.size());
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw decode_error("bad blob magic", 0);
    if (bytes[4] != kVersion)
        throw decode_error("unsupported container version", 4);
    CompressedBlob blob;
    if (bytes[5] != static_cast<uint8_t>(CodecId::toy_rle) &&
        bytes[5] != static_cast<uint8_t>(CodecId::filtered_deflate))
        throw decode_error("unknown codec id", 5);
    blob.codec_id = static_cast<CodecId>(bytes[5]);
    blob.original_depth = bytes[6];
    if (blob.original_depth != 1 && blob.original_depth != 8)
        throw decode_error("unsupported depth", 6);
    if (bytes[7] > 1) throw decode_error("unknown flag bits", 7);
    blob.complemented = bytes[7] == 1;
    blob.original_width = static_cast<int>(get_u32(bytes.data() + 8));
    blob.original_height = static_cast<int>(get_u32(bytes.data() + 12));
    if (blob.original_width < 1 || blob.original_height < 1)
        throw decode_error("invalid geometry in header", 8);
    const uint64_t plen = get_u64(bytes.data() + 16);
    if (bytes.size() != CompressedBlob::kHeaderBytes + plen)
        throw decode_error("payload length mismatch", 16);
    blob.payload.assign(bytes.begin() + CompressedBlob::kHeaderBytes, bytes.end());
    return blob;
}

} // namespace pixeldepth
