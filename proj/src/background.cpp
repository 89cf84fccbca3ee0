#include "macc/background.hpp"

#include "macc/errors.hpp"
#include "macc/row_scan.hpp"

namespace macc {

uint32_t bytes_for_value(uint64_t maxval) {
    uint32_t n = 1;
    while (maxval > 0xFF) {
        maxval >>= 8;
        ++n;
    }
    return n;
}

SectionLayout section_layout(uint32_t width) {
    // A fully alternating bitmap has one run start per column, so the
    // count field must hold the value W itself.
    return SectionLayout{bytes_for_value(width), bytes_for_value(width - 1)};
}

static void put_le(std::vector<uint8_t>& out, uint64_t v, uint32_t nbytes) {
    for (uint32_t i = 0; i < nbytes; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

static uint64_t get_le(std::span<const uint8_t> bytes, uint64_t pos, uint32_t nbytes) {
    uint64_t v = 0;
    for (uint32_t i = 0; i < nbytes; ++i) v |= uint64_t(bytes[pos + i]) << (8 * i);
    return v;
}

void append_row_record(std::vector<uint8_t>& out, const IndexList& row, uint32_t width,
                       SectionLayout lay) {
    put_le(out, row.size(), lay.cnt_bytes);
    uint32_t prev = 0;
    bool first = true;
    for (uint32_t idx : row) {
        if (idx >= width) throw ConfigError("run-start index out of row range");
        if (!first && idx <= prev) throw ConfigError("run-start indices must be strictly increasing");
        put_le(out, idx, lay.idx_bytes);
        prev = idx;
        first = false;
    }
}

std::vector<uint8_t> encode_bitmap_section(const std::vector<IndexList>& rows, uint32_t width) {
    SectionLayout lay = section_layout(width);
    uint64_t total = 0;
    for (const IndexList& r : rows) total += row_record_size(r, lay);

    std::vector<uint8_t> out;
    out.reserve(total);
    for (const IndexList& r : rows) append_row_record(out, r, width, lay);
    return out;
}

BitmapRow reconstruct_bitmap_row(const IndexList& idx, uint32_t width) {
    BitmapRow b(width);
    for (size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] >= width) throw CorruptError("run-start index out of row range");
        if (k > 0 && idx[k] <= idx[k - 1])
            throw CorruptError("run-start indices must be strictly increasing");
        if (k % 2 == 1) continue;  // start of a 0-run
        uint32_t end = (k + 1 < idx.size()) ? idx[k + 1] : width;
        for (uint32_t j = idx[k]; j < end; ++j) b.set(j);
    }
    return b;
}

std::vector<BitmapRow> decode_bitmap_section(std::span<const uint8_t> bytes, uint32_t width,
                                             uint32_t height) {
    SectionLayout lay = section_layout(width);
    std::vector<BitmapRow> rows;
    rows.reserve(height);

    uint64_t pos = 0;
    for (uint32_t r = 0; r < height; ++r) {
        if (pos + lay.cnt_bytes > bytes.size()) throw CorruptError("background section truncated");
        uint64_t count = get_le(bytes, pos, lay.cnt_bytes);
        pos += lay.cnt_bytes;
        if (count > width) throw CorruptError("row run count exceeds row width");
        if (pos + count * lay.idx_bytes > bytes.size())
            throw CorruptError("background section truncated");

        IndexList idx(count);
        for (uint64_t k = 0; k < count; ++k) {
            idx[k] = uint32_t(get_le(bytes, pos, lay.idx_bytes));
            pos += lay.idx_bytes;
        }
        rows.push_back(reconstruct_bitmap_row(idx, width));
    }
    if (pos != bytes.size()) throw CorruptError("background section length mismatch");
    return rows;
}

PaperAccounting paper_cost_model(const Image& img) {
    PaperAccounting acc;
    acc.raw_bits = 8 * img.pixel_count();

    for (uint32_t r = 0; r < img.height; ++r) {
        const uint8_t* px = img.row(r);
        uint64_t nonzero = 0;
        uint64_t starts = 0;
        bool prev = false;  // implicit leading background
        for (uint32_t c = 0; c < img.width; ++c) {
            bool cur = px[c] != 0;
            if (cur) ++nonzero;
            if (cur != prev) ++starts;
            prev = cur;
        }
        if (nonzero == 0) {
            acc.zero_row_bits += 8;
        } else {
            acc.foreground_bits += 8 * nonzero;
            acc.index_bits += 8 * starts;
        }
    }
    acc.total_bits = acc.foreground_bits + acc.index_bits + acc.zero_row_bits;
    acc.ratio = double(acc.raw_bits) / double(acc.total_bits);
    return acc;
}

}  // namespace macc
