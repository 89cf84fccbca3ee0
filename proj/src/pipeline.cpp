#include "macc/pipeline.hpp"

#include <numeric>

#include "macc/background.hpp"
#include "macc/compactor.hpp"
#include "macc/errors.hpp"
#include "macc/foreground.hpp"

namespace macc {

RowPipeline::RowPipeline(uint32_t width, const HuffmanTable& table, SimConfig config)
    : width_(width), config_(config), codes_(table) {
    if (width < 1) throw ConfigError("pipeline row width must be at least 1");
}

CycleRecord RowPipeline::step(std::optional<std::span<const uint8_t>> row, int64_t row_id) {
    ++cycle_;
    CycleRecord rec;
    rec.cycle = cycle_;
    rec.stage1_row = row ? row_id : -1;
    rec.stage2_row = reg1_.row;
    rec.stage3_row = reg2_.row;

    // Stage 3: emit the row record and the coded residual chunk of the row
    // admitted two cycles ago.
    if (reg2_.row >= 0) {
        uint64_t bg_before = bg_payload_.size();
        append_row_record(bg_payload_, reg2_.indices, width_, section_layout(width_));
        rec.bg_bytes = bg_payload_.size() - bg_before;

        uint64_t fg_before = fg_writer_.bytes_completed();
        for (uint8_t v : reg2_.foreground) {
            codes_.put(fg_writer_, uint8_t(v - prev_value_));
            prev_value_ = v;
        }
        rec.fg_symbols = reg2_.foreground.size();
        rec.bytes_emitted = rec.bg_bytes + (fg_writer_.bytes_completed() - fg_before);
    }

    // Stage 2: run-start indices and foreground extraction of the same row,
    // both through the compression unit.
    Stage2Reg next2;
    if (reg1_.row >= 0) {
        next2.row = reg1_.row;
        TransitionRow t = transitions(reg1_.bitmap);
        if (config_.structural_cu) {
            MaskedVector<uint32_t> idx_in;
            idx_in.x.resize(width_);
            std::iota(idx_in.x.begin(), idx_in.x.end(), 0);
            idx_in.y = t;
            std::vector<uint32_t> packed = cu_structural(idx_in, derive_controls(t));
            next2.indices.assign(packed.begin(), packed.begin() + t.popcount());

            MaskedVector<uint8_t> fg_in;
            fg_in.x = reg1_.pixels;
            fg_in.y = reg1_.bitmap;
            std::vector<uint8_t> fg = cu_structural(fg_in, derive_controls(reg1_.bitmap));
            next2.foreground.assign(fg.begin(), fg.begin() + reg1_.bitmap.popcount());
        } else {
            next2.indices = run_start_indices(t);
            next2.foreground = extract_foreground(reg1_.pixels, reg1_.bitmap);
        }
    }
    reg2_ = std::move(next2);

    // Stage 1: bitmap of the admitted row.
    Stage1Reg next1;
    if (row) {
        if (row->size() != width_) throw ConfigError("row length does not match pipeline width");
        next1.row = row_id;
        next1.pixels.assign(row->begin(), row->end());
        next1.bitmap = bitmap_row(*row);
    }
    reg1_ = std::move(next1);

    return rec;
}

uint64_t RowPipeline::flush() {
    uint64_t before = fg_writer_.bytes_completed();
    fg_final_ = fg_writer_.finish();
    return fg_final_.bytes.size() - before;
}

BitBuffer RowPipeline::take_foreground() { return std::move(fg_final_); }

SimTrace simulate(const Image& img, SimConfig config) {
    if (img.height < 1 || img.width < 1) throw ConfigError("cannot simulate an empty image");

    // The Huffman table is fixed ahead of the first cycle (two-pass encoder).
    std::vector<uint8_t> fg;
    for (uint32_t r = 0; r < img.height; ++r) {
        std::span<const uint8_t> row(img.row(r), img.width);
        std::vector<uint8_t> kept = extract_foreground(row, bitmap_row(row));
        fg.insert(fg.end(), kept.begin(), kept.end());
    }
    HuffmanTable table;
    if (!fg.empty()) table = huffman_build(histogram(residual_encode(fg)));

    RowPipeline pipe(img.width, table, config);
    SimTrace trace;
    trace.cycles.reserve(img.height + 2);
    for (uint64_t c = 1; c <= uint64_t(img.height) + 2; ++c) {
        std::optional<std::span<const uint8_t>> row;
        int64_t id = -1;
        if (c <= img.height) {
            row = std::span<const uint8_t>(img.row(uint32_t(c - 1)), img.width);
            id = int64_t(c - 1);
        }
        trace.cycles.push_back(pipe.step(row, id));
    }
    trace.cycles.back().bytes_emitted += pipe.flush();

    trace.background_payload = pipe.background_payload();
    trace.foreground_payload = pipe.take_foreground().bytes;
    return trace;
}

void write_trace_csv(const SimTrace& trace, std::ostream& os) {
    os << "cycle,stage1_row,stage2_row,stage3_row,bytes_emitted\n";
    for (const CycleRecord& c : trace.cycles)
        os << c.cycle << ',' << c.stage1_row << ',' << c.stage2_row << ',' << c.stage3_row << ','
           << c.bytes_emitted << '\n';
}

}  // namespace macc
