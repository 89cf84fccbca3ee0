#include "macc/kernels.hpp"

#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "macc/background.hpp"
#include "macc/errors.hpp"
#include "macc/foreground.hpp"

namespace macc::kernels {

namespace {

constexpr uint64_t kScanBlock = 1 << 16;   // residual-decode block size
constexpr uint64_t kEncodeChunk = 1 << 16; // symbols per Huffman encode chunk

void put_le(uint8_t* out, uint64_t v, uint32_t nbytes) {
    for (uint32_t i = 0; i < nbytes; ++i) out[i] = uint8_t(v >> (8 * i));
}

}  // namespace

// ---------------------------------------------------------------- scan ----

static ImageScan scan_image_serial(const Image& img) {
    ImageScan scan;
    scan.row_indices.resize(img.height);
    scan.fg_offsets.assign(img.height + 1, 0);
    for (uint32_t r = 0; r < img.height; ++r) {
        std::span<const uint8_t> row(img.row(r), img.width);
        BitmapRow b = bitmap_row(row);
        scan.row_indices[r] = run_start_indices(transitions(b));
        std::vector<uint8_t> fg = extract_foreground(row, b);
        scan.foreground.insert(scan.foreground.end(), fg.begin(), fg.end());
        scan.fg_offsets[r + 1] = scan.foreground.size();
    }
    return scan;
}

static ImageScan scan_image_parallel(const Image& img) {
    ImageScan scan;
    scan.row_indices.resize(img.height);
    scan.fg_offsets.assign(img.height + 1, 0);
    std::vector<uint64_t> counts(img.height);

    const int64_t h = img.height;
#pragma omp parallel for schedule(static)
    for (int64_t r = 0; r < h; ++r) {
        std::span<const uint8_t> row(img.row(uint32_t(r)), img.width);
        BitmapRow b = bitmap_row(row);
        counts[r] = b.popcount();
        scan.row_indices[r] = run_start_indices(transitions(b));
    }

    for (int64_t r = 0; r < h; ++r) scan.fg_offsets[r + 1] = scan.fg_offsets[r] + counts[r];
    scan.foreground.resize(scan.fg_offsets[img.height]);

#pragma omp parallel for schedule(static)
    for (int64_t r = 0; r < h; ++r) {
        const uint8_t* px = img.row(uint32_t(r));
        uint8_t* dst = scan.foreground.data() + scan.fg_offsets[r];
        for (uint32_t c = 0; c < img.width; ++c)
            if (px[c]) *dst++ = px[c];
    }
    return scan;
}

ImageScan scan_image(const Image& img, Exec exec) {
    return exec == Exec::Serial ? scan_image_serial(img) : scan_image_parallel(img);
}

// ---------------------------------------------------- background encode ----

std::vector<uint8_t> encode_background(const std::vector<IndexList>& rows, uint32_t width,
                                       Exec exec) {
    if (exec == Exec::Serial) return encode_bitmap_section(rows, width);

    SectionLayout lay = section_layout(width);
    const int64_t h = int64_t(rows.size());
    std::vector<uint64_t> offsets(rows.size() + 1, 0);
    for (int64_t r = 0; r < h; ++r)
        offsets[r + 1] = offsets[r] + row_record_size(rows[r], lay);

    std::vector<uint8_t> out(offsets[rows.size()]);
#pragma omp parallel for schedule(static)
    for (int64_t r = 0; r < h; ++r) {
        uint8_t* p = out.data() + offsets[r];
        put_le(p, rows[r].size(), lay.cnt_bytes);
        p += lay.cnt_bytes;
        for (uint32_t idx : rows[r]) {
            put_le(p, idx, lay.idx_bytes);
            p += lay.idx_bytes;
        }
    }
    return out;
}

// -------------------------------------------------------------- residual ----

std::vector<uint8_t> residual_encode(std::span<const uint8_t> fg, Exec exec) {
    if (exec == Exec::Serial) return macc::residual_encode(fg);

    std::vector<uint8_t> out(fg.size());
    const int64_t n = int64_t(fg.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; ++i)
        out[i] = uint8_t(fg[i] - (i ? fg[i - 1] : 0));
    return out;
}

std::vector<uint8_t> residual_decode(std::span<const uint8_t> residuals, Exec exec) {
    if (exec == Exec::Serial) return macc::residual_decode(residuals);

    // Blocked prefix scan: mod-256 addition is associative, so per-block
    // sums can be fixed up with one serial pass over the block totals.
    const uint64_t n = residuals.size();
    std::vector<uint8_t> out(n);
    const uint64_t nblocks = (n + kScanBlock - 1) / kScanBlock;
    std::vector<uint8_t> block_sum(nblocks, 0);

    const int64_t nb = int64_t(nblocks);
#pragma omp parallel for schedule(static)
    for (int64_t b = 0; b < nb; ++b) {
        uint64_t lo = uint64_t(b) * kScanBlock, hi = std::min(n, lo + kScanBlock);
        uint8_t acc = 0;
        for (uint64_t i = lo; i < hi; ++i) {
            acc = uint8_t(acc + residuals[i]);
            out[i] = acc;
        }
        block_sum[b] = acc;
    }

    std::vector<uint8_t> block_off(nblocks, 0);
    for (uint64_t b = 1; b < nblocks; ++b)
        block_off[b] = uint8_t(block_off[b - 1] + block_sum[b - 1]);

    bool corrupt = false;
#pragma omp parallel for schedule(static) reduction(|| : corrupt)
    for (int64_t b = 0; b < nb; ++b) {
        uint64_t lo = uint64_t(b) * kScanBlock, hi = std::min(n, lo + kScanBlock);
        uint8_t off = block_off[b];
        for (uint64_t i = lo; i < hi; ++i) {
            out[i] = uint8_t(out[i] + off);
            if (out[i] == 0) corrupt = true;
        }
    }
    if (corrupt) throw CorruptError("decoded foreground value of 0");
    return out;
}

// ------------------------------------------------------------- histogram ----

std::array<uint64_t, 256> histogram(std::span<const uint8_t> symbols, Exec exec) {
    if (exec == Exec::Serial) return macc::histogram(symbols);

    std::array<uint64_t, 256> h{};
    const int64_t n = int64_t(symbols.size());
#pragma omp parallel
    {
        std::array<uint64_t, 256> local{};
#pragma omp for schedule(static) nowait
        for (int64_t i = 0; i < n; ++i) ++local[symbols[i]];
#pragma omp critical(macc_histogram_merge)
        for (int s = 0; s < 256; ++s) h[s] += local[s];
    }
    return h;
}

// -------------------------------------------------------- huffman encode ----

BitBuffer huffman_encode(std::span<const uint8_t> symbols, const HuffmanTable& table, Exec exec) {
    if (exec == Exec::Serial) return macc::huffman_encode(symbols, table);

    CanonicalCodes codes(table);
    const uint64_t n = symbols.size();
    const uint64_t nchunks = (n + kEncodeChunk - 1) / kEncodeChunk;
    std::vector<BitBuffer> parts(nchunks);

    const int64_t nc = int64_t(nchunks);
#pragma omp parallel for schedule(static)
    for (int64_t c = 0; c < nc; ++c) {
        uint64_t lo = uint64_t(c) * kEncodeChunk, hi = std::min(n, lo + kEncodeChunk);
        BitWriter w;
        for (uint64_t i = lo; i < hi; ++i) codes.put(w, symbols[i]);
        parts[c] = w.finish();
    }

    BitWriter merged;
    for (const BitBuffer& part : parts) merged.append(part);
    return merged.finish();
}

// ----------------------------------------------------- background decode ----

std::vector<BitmapRow> decode_background(std::span<const uint8_t> bytes, uint32_t width,
                                         uint32_t height, Exec exec) {
    if (exec == Exec::Serial) return decode_bitmap_section(bytes, width, height);

    // Record boundaries come from a cheap serial hop over the count fields;
    // per-row parsing and reconstruction then run in parallel.
    SectionLayout lay = section_layout(width);
    std::vector<uint64_t> offsets(uint64_t(height) + 1, 0);
    uint64_t pos = 0;
    for (uint32_t r = 0; r < height; ++r) {
        if (pos + lay.cnt_bytes > bytes.size()) throw CorruptError("background section truncated");
        uint64_t count = 0;
        for (uint32_t i = 0; i < lay.cnt_bytes; ++i)
            count |= uint64_t(bytes[pos + i]) << (8 * i);
        if (count > width) throw CorruptError("row run count exceeds row width");
        uint64_t rec = lay.cnt_bytes + count * lay.idx_bytes;
        if (pos + rec > bytes.size()) throw CorruptError("background section truncated");
        pos += rec;
        offsets[r + 1] = pos;
    }
    if (pos != bytes.size()) throw CorruptError("background section length mismatch");

    std::vector<BitmapRow> rows(height);
    const int64_t h = height;
    std::string first_error;
#pragma omp parallel for schedule(static)
    for (int64_t r = 0; r < h; ++r) {
        try {
            uint64_t p = offsets[r];
            uint64_t count = 0;
            for (uint32_t i = 0; i < lay.cnt_bytes; ++i)
                count |= uint64_t(bytes[p + i]) << (8 * i);
            p += lay.cnt_bytes;
            IndexList idx(count);
            for (uint64_t k = 0; k < count; ++k) {
                uint64_t v = 0;
                for (uint32_t i = 0; i < lay.idx_bytes; ++i)
                    v |= uint64_t(bytes[p + i]) << (8 * i);
                p += lay.idx_bytes;
                idx[k] = uint32_t(v);
            }
            rows[r] = reconstruct_bitmap_row(idx, width);
        } catch (const Error& e) {
#pragma omp critical(macc_bg_decode_error)
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) throw CorruptError(first_error);
    return rows;
}

// ---------------------------------------------------------------- scatter ----

Image scatter_foreground(uint32_t width, uint32_t height, const std::vector<BitmapRow>& bitmaps,
                         std::span<const uint8_t> fg, Exec exec) {
    std::vector<uint64_t> offsets(uint64_t(height) + 1, 0);
    for (uint32_t r = 0; r < height; ++r) offsets[r + 1] = offsets[r] + bitmaps[r].popcount();
    if (offsets[height] != fg.size())
        throw CorruptError("foreground count does not match bitmap popcount");

    Image img(width, height, 0);
    const int64_t h = height;
    if (exec == Exec::Serial) {
        for (int64_t r = 0; r < h; ++r) {
            const uint8_t* src = fg.data() + offsets[r];
            uint8_t* px = img.row(uint32_t(r));
            for (uint32_t c = 0; c < width; ++c)
                if (bitmaps[r].get(c)) px[c] = *src++;
        }
        return img;
    }

#pragma omp parallel for schedule(static)
    for (int64_t r = 0; r < h; ++r) {
        const uint8_t* src = fg.data() + offsets[r];
        uint8_t* px = img.row(uint32_t(r));
        for (uint32_t c = 0; c < width; ++c)
            if (bitmaps[r].get(c)) px[c] = *src++;
    }
    return img;
}

}  // namespace macc::kernels
