#include "macc/container.hpp"

#include <cstring>

#include "macc/errors.hpp"
#include "macc/foreground.hpp"
#include "macc/huffman.hpp"

namespace macc {

namespace {

void put_le(std::vector<uint8_t>& out, uint64_t v, uint32_t nbytes) {
    for (uint32_t i = 0; i < nbytes; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

uint64_t get_le(std::span<const uint8_t> b, uint64_t pos, uint32_t nbytes) {
    uint64_t v = 0;
    for (uint32_t i = 0; i < nbytes; ++i) v |= uint64_t(b[pos + i]) << (8 * i);
    return v;
}

}  // namespace

std::vector<uint8_t> CompressedStream::to_bytes() const {
    std::vector<uint8_t> out;
    out.reserve(total_bytes());
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    out.push_back(kFormatVersion);
    put_le(out, width, 4);
    put_le(out, height, 4);
    put_le(out, fg_count, 8);
    put_le(out, background.size(), 8);
    out.insert(out.end(), huffman_table.begin(), huffman_table.end());
    out.insert(out.end(), background.begin(), background.end());
    out.insert(out.end(), foreground.begin(), foreground.end());
    return out;
}

CompressedStream CompressedStream::from_bytes(std::span<const uint8_t> bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic.data(), 4) != 0)
        throw BadMagic("not a MACC file");
    if (bytes.size() < kHeaderBytes) throw ParseError("container header truncated");
    if (bytes[4] != kFormatVersion) throw BadVersion("unsupported container version");

    CompressedStream cs;
    cs.width = uint32_t(get_le(bytes, 5, 4));
    cs.height = uint32_t(get_le(bytes, 9, 4));
    cs.fg_count = get_le(bytes, 13, 8);
    uint64_t bg_len = get_le(bytes, 21, 8);
    if (cs.width < 1 || cs.height < 1) throw ParseError("container header: zero dimension");
    if (bytes.size() < kHeaderBytes + kTableBytes ||
        bg_len > bytes.size() - kHeaderBytes - kTableBytes)
        throw ParseError("container sections truncated");

    std::memcpy(cs.huffman_table.data(), bytes.data() + kHeaderBytes, kTableBytes);
    auto bg_begin = bytes.begin() + kHeaderBytes + kTableBytes;
    cs.background.assign(bg_begin, bg_begin + bg_len);
    cs.foreground.assign(bg_begin + bg_len, bytes.end());
    return cs;
}

static CompressedStream compress_impl(const Image& img, Exec exec, uint64_t& fg_bits) {
    if (img.width < 1 || img.height < 1 || img.pixels.size() != img.pixel_count())
        throw ConfigError("invalid image");

    kernels::ImageScan scan = kernels::scan_image(img, exec);

    CompressedStream cs;
    cs.width = img.width;
    cs.height = img.height;
    cs.fg_count = scan.foreground.size();
    cs.background = kernels::encode_background(scan.row_indices, img.width, exec);

    fg_bits = 0;
    if (!scan.foreground.empty()) {
        std::vector<uint8_t> residuals = kernels::residual_encode(scan.foreground, exec);
        HuffmanTable table = huffman_build(kernels::histogram(residuals, exec));
        cs.huffman_table = serialize_table(table);
        BitBuffer coded = kernels::huffman_encode(residuals, table, exec);
        fg_bits = coded.bits;
        cs.foreground = std::move(coded.bytes);
    }
    return cs;
}

CompressedStream compress(const Image& img, Exec exec) {
    uint64_t fg_bits = 0;
    return compress_impl(img, exec, fg_bits);
}

Image decompress(const CompressedStream& cs, Exec exec) {
    std::vector<BitmapRow> bitmaps =
        kernels::decode_background(cs.background, cs.width, cs.height, exec);

    uint64_t popcount = 0;
    for (const BitmapRow& b : bitmaps) popcount += b.popcount();
    if (popcount != cs.fg_count)
        throw CorruptError("foreground count does not match bitmap popcount");

    HuffmanTable table = deserialize_table(cs.huffman_table);
    uint64_t bits_used = 0;
    std::vector<uint8_t> residuals = huffman_decode(cs.foreground, table, cs.fg_count, bits_used);
    if ((bits_used + 7) / 8 != cs.foreground.size())
        throw CorruptError("foreground section length mismatch");

    std::vector<uint8_t> fg = kernels::residual_decode(residuals, exec);
    return kernels::scatter_foreground(cs.width, cs.height, bitmaps, fg, exec);
}

StatsReport stats(const Image& img, Exec exec) {
    uint64_t fg_bits = 0;
    CompressedStream cs = compress_impl(img, exec, fg_bits);

    StatsReport rep;
    rep.raw_bits = 8 * img.pixel_count();
    rep.container_bits = 8 * cs.total_bytes();
    rep.container_ratio = double(rep.raw_bits) / double(rep.container_bits);
    rep.paper_model = paper_cost_model(img);
    rep.fg_count = cs.fg_count;
    rep.fg_raw_bits = 8 * cs.fg_count;
    rep.fg_coded_bits = fg_bits;  // coded stream bits, table excluded
    if (fg_bits > 0) rep.fg_ratio = double(rep.fg_raw_bits) / double(fg_bits);

    rep.sections = SectionSizes{kHeaderBytes, kTableBytes, cs.background.size(),
                                cs.foreground.size()};
    return rep;
}

}  // namespace macc
