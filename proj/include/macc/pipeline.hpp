#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "macc/bitstream.hpp"
#include "macc/huffman.hpp"
#include "macc/image.hpp"
#include "macc/row_scan.hpp"

namespace macc {

struct SimConfig {
    // Run the stage-2 compression units through the routing-unit grid
    // instead of the behavioral model. O(W^2) per row.
    bool structural_cu = false;
};

struct CycleRecord {
    uint64_t cycle = 0;   // 1-based
    int64_t stage1_row = -1;
    int64_t stage2_row = -1;
    int64_t stage3_row = -1;
    uint64_t bytes_emitted = 0;   // background + foreground bytes completed this cycle
    uint64_t bg_bytes = 0;        // of which: background record bytes
    uint64_t fg_symbols = 0;      // residual symbols coded this cycle
};

struct SimTrace {
    std::vector<CycleRecord> cycles;
    std::vector<uint8_t> background_payload;
    std::vector<uint8_t> foreground_payload;

    uint64_t total_cycles() const { return cycles.size(); }
};

// Cycle-level model of the 3-stage row pipeline: stage 1 forms the bitmap,
// stage 2 extracts run-start indices and foreground values in parallel,
// stage 3 emits the row record and the Huffman-coded residual chunk. A row
// admitted at cycle a is emitted at cycle a+2; the Huffman table is fixed
// before the first cycle (two-pass encoder).
class RowPipeline {
public:
    RowPipeline(uint32_t width, const HuffmanTable& table, SimConfig config = {});

    // Advances one cycle. Pass std::nullopt to insert a bubble. `row_id`
    // labels the admitted row in the trace.
    CycleRecord step(std::optional<std::span<const uint8_t>> row, int64_t row_id);

    // Pads the final foreground byte; returns the extra bytes emitted.
    uint64_t flush();

    const std::vector<uint8_t>& background_payload() const { return bg_payload_; }
    BitBuffer take_foreground();

    // Stage-2 latch contents, for inspection: indices and foreground of one
    // row, produced together in the same cycle.
    struct Stage2Reg {
        int64_t row = -1;
        IndexList indices;
        std::vector<uint8_t> foreground;
    };
    const Stage2Reg& stage2() const { return reg2_; }

private:
    struct Stage1Reg {
        int64_t row = -1;
        std::vector<uint8_t> pixels;
        BitmapRow bitmap;
    };

    uint32_t width_;
    SimConfig config_;
    CanonicalCodes codes_;
    uint64_t cycle_ = 0;

    Stage1Reg reg1_;
    Stage2Reg reg2_;

    uint8_t prev_value_ = 0;  // residual chain across rows
    BitWriter fg_writer_;
    BitBuffer fg_final_;
    std::vector<uint8_t> bg_payload_;
};

// Drives the pipeline over all rows plus two drain cycles; total cycle
// count is height + 2. Payloads match the container sections byte for byte.
SimTrace simulate(const Image& img, SimConfig config = {});

// Line-oriented export: cycle,stage1_row,stage2_row,stage3_row,bytes_emitted
void write_trace_csv(const SimTrace& trace, std::ostream& os);

}  // namespace macc
