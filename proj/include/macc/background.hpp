#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "macc/image.hpp"
#include "macc/row_scan.hpp"

namespace macc {

// Byte widths of the per-row record fields for a given image width:
// idx_bytes is the minimal width holding W-1, cnt_bytes the minimal width
// holding W (a fully alternating row has W run starts).
struct SectionLayout {
    uint32_t cnt_bytes = 0;
    uint32_t idx_bytes = 0;
};

// Minimal little-endian byte width that holds `maxval`.
uint32_t bytes_for_value(uint64_t maxval);

SectionLayout section_layout(uint32_t width);

// Size in bytes of one encoded row record.
inline uint64_t row_record_size(const IndexList& row, SectionLayout lay) {
    return lay.cnt_bytes + uint64_t(row.size()) * lay.idx_bytes;
}

// Appends one row record: count field then each index, all little-endian.
// A count of 0 marks an all-zero row.
void append_row_record(std::vector<uint8_t>& out, const IndexList& row, uint32_t width,
                       SectionLayout lay);

// Background section for all rows of a width-W image.
std::vector<uint8_t> encode_bitmap_section(const std::vector<IndexList>& rows, uint32_t width);

// Inverse of encode_bitmap_section followed by reconstruct_bitmap_row per
// row. The section must contain exactly `height` records and no slack.
std::vector<BitmapRow> decode_bitmap_section(std::span<const uint8_t> bytes, uint32_t width,
                                             uint32_t height);

// Rebuilds a bitmap from its run-start indices: the run starting at idx[0]
// is a 1-run, run types alternate, and the final run extends to the row end.
BitmapRow reconstruct_bitmap_row(const IndexList& idx, uint32_t width);

// The idealized byte accounting with 8-bit indices, one 8-bit code per
// all-zero row, and no per-row delimiters.
struct PaperAccounting {
    uint64_t foreground_bits = 0;  // 8 x non-zero pixel count
    uint64_t index_bits = 0;       // 8 x run-start index count over non-empty rows
    uint64_t zero_row_bits = 0;    // 8 x all-zero row count
    uint64_t total_bits = 0;
    uint64_t raw_bits = 0;         // 8 x W x H
    double ratio = 0.0;            // raw_bits / total_bits
};

PaperAccounting paper_cost_model(const Image& img);

}  // namespace macc
