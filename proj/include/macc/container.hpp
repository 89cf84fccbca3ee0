#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "macc/background.hpp"
#include "macc/image.hpp"
#include "macc/kernels.hpp"

namespace macc {

inline constexpr std::array<uint8_t, 4> kMagic = {'M', 'A', 'C', 'C'};
inline constexpr uint8_t kFormatVersion = 1;
// magic 4 + version 1 + width 4 + height 4 + fg_count 8 + bg_section_len 8
inline constexpr uint64_t kHeaderBytes = 29;
inline constexpr uint64_t kTableBytes = 256;

// Parsed MACC container. All header integers are little-endian on the wire.
struct CompressedStream {
    uint32_t width = 0;
    uint32_t height = 0;
    uint64_t fg_count = 0;
    std::array<uint8_t, 256> huffman_table{};  // code lengths; all zero when fg_count == 0
    std::vector<uint8_t> background;
    std::vector<uint8_t> foreground;

    std::vector<uint8_t> to_bytes() const;
    static CompressedStream from_bytes(std::span<const uint8_t> bytes);

    uint64_t total_bytes() const {
        return kHeaderBytes + kTableBytes + background.size() + foreground.size();
    }

    bool operator==(const CompressedStream&) const = default;
};

struct SectionSizes {
    uint64_t header_bytes = 0;
    uint64_t table_bytes = 0;
    uint64_t background_bytes = 0;
    uint64_t foreground_bytes = 0;
};

struct StatsReport {
    uint64_t raw_bits = 0;
    uint64_t container_bits = 0;
    double container_ratio = 0.0;  // raw_bits / container_bits
    PaperAccounting paper_model;
    uint64_t fg_count = 0;
    uint64_t fg_raw_bits = 0;    // 8 x fg_count
    uint64_t fg_coded_bits = 0;  // Huffman bitstream bits, table excluded
    double fg_ratio = 0.0;       // fg_raw_bits / fg_coded_bits, 0 when no foreground
    SectionSizes sections;
};

CompressedStream compress(const Image& img, Exec exec = Exec::Parallel);
Image decompress(const CompressedStream& cs, Exec exec = Exec::Parallel);
StatsReport stats(const Image& img, Exec exec = Exec::Parallel);

}  // namespace macc
