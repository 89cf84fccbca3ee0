#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "helpers.hpp"
#include "macc/background.hpp"
#include "macc/container.hpp"
#include "macc/errors.hpp"
#include "macc/foreground.hpp"
#include "macc/pipeline.hpp"
#include "macc/synthetic.hpp"

using namespace macc;

TEST_CASE("a single-row image drains in 3 cycles") {
    Image img(8, 1);
    img.pixels = {0, 0, 9, 9, 0, 0, 5, 0};
    SimTrace trace = simulate(img);
    REQUIRE(trace.total_cycles() == 3);
    CHECK(trace.cycles[0].stage1_row == 0);
    CHECK(trace.cycles[0].bytes_emitted == 0);
    CHECK(trace.cycles[1].stage2_row == 0);
    CHECK(trace.cycles[1].bytes_emitted == 0);
    CHECK(trace.cycles[2].stage3_row == 0);
    CHECK(trace.cycles[2].bytes_emitted > 0);
}

TEST_CASE("bubbles advance the pipeline without emission") {
    Image img(4, 2);
    img.pixels = {1, 0, 2, 0, 0, 3, 0, 4};
    std::vector<uint8_t> fg{1, 2, 3, 4};
    HuffmanTable table = huffman_build(histogram(residual_encode(fg)));
    RowPipeline pipe(4, table);

    CycleRecord c1 = pipe.step(std::span<const uint8_t>(img.row(0), 4), 0);
    CHECK(c1.stage1_row == 0);
    CHECK(c1.stage3_row == -1);

    CycleRecord c2 = pipe.step(std::nullopt, -1);  // bubble behind row 0
    CHECK(c2.stage1_row == -1);
    CHECK(c2.stage2_row == 0);
    CHECK(c2.bytes_emitted == 0);

    CycleRecord c3 = pipe.step(std::span<const uint8_t>(img.row(1), 4), 1);
    CHECK(c3.stage3_row == 0);
    CHECK(c3.bg_bytes > 0);

    CycleRecord c4 = pipe.step(std::nullopt, -1);
    CHECK(c4.stage3_row == -1);  // the bubble reaches stage 3
    CHECK(c4.bytes_emitted == 0);

    CycleRecord c5 = pipe.step(std::nullopt, -1);
    CHECK(c5.stage3_row == 1);
}

TEST_CASE("cycle count is height + 2") {
    auto g = testutil::rng(5);
    for (uint32_t h : {1u, 2u, 3u, 17u, 256u}) {
        Image img = Image(16, h);
        for (auto& p : img.pixels) p = uint8_t(g() % 3 ? 0 : 1 + g() % 255);
        SimTrace trace = simulate(img);
        CHECK(trace.total_cycles() == h + 2);
        CHECK(trace.cycles.back().cycle == h + 2);
        // rows leave in entry order
        int64_t last = -1;
        for (const auto& c : trace.cycles) {
            if (c.stage3_row >= 0) {
                CHECK(c.stage3_row == last + 1);
                last = c.stage3_row;
            }
        }
        CHECK(last == int64_t(h) - 1);
    }
}

TEST_CASE("pipeline payloads equal the container sections") {
    auto g = testutil::rng(50);
    std::vector<Image> corpus;
    corpus.push_back(gen_synthetic(fig8_params()));
    corpus.push_back(Image(9, 9));  // all zero
    for (int i = 0; i < 10; ++i) corpus.push_back(testutil::random_image(g, 80, 40, 0.6));
    for (int i = 0; i < 4; ++i) corpus.push_back(testutil::random_synthetic(g));

    for (const Image& img : corpus) {
        SimTrace trace = simulate(img);
        CompressedStream cs = compress(img);
        CHECK(trace.background_payload == cs.background);
        CHECK(trace.foreground_payload == cs.foreground);

        // per-cycle byte counts add up to the payload totals
        uint64_t emitted = 0;
        for (const auto& c : trace.cycles) emitted += c.bytes_emitted;
        CHECK(emitted == trace.background_payload.size() + trace.foreground_payload.size());
    }
}

TEST_CASE("structural compression units produce identical payloads") {
    auto g = testutil::rng(51);
    std::vector<Image> corpus;
    corpus.push_back(gen_synthetic(fig8_params()));
    for (int i = 0; i < 3; ++i) corpus.push_back(testutil::random_image(g, 48, 24, 0.5));
    for (const Image& img : corpus) {
        SimTrace behavioral = simulate(img, SimConfig{false});
        SimTrace structural = simulate(img, SimConfig{true});
        CHECK(structural.background_payload == behavioral.background_payload);
        CHECK(structural.foreground_payload == behavioral.foreground_payload);
        CHECK(structural.total_cycles() == behavioral.total_cycles());
    }
}

TEST_CASE("stage 2 produces indices and foreground of the same row together") {
    Image img = gen_synthetic(fig8_params());
    std::vector<uint8_t> fg;
    for (uint32_t r = 0; r < img.height; ++r) {
        std::span<const uint8_t> row(img.row(r), img.width);
        auto kept = extract_foreground(row, bitmap_row(row));
        fg.insert(fg.end(), kept.begin(), kept.end());
    }
    HuffmanTable table = huffman_build(histogram(residual_encode(fg)));
    RowPipeline pipe(img.width, table);

    SectionLayout lay = section_layout(img.width);
    for (uint32_t c = 1; c <= img.height + 2; ++c) {
        std::optional<std::span<const uint8_t>> row;
        int64_t id = -1;
        if (c <= img.height) {
            row = std::span<const uint8_t>(img.row(c - 1), img.width);
            id = int64_t(c - 1);
        }
        CycleRecord rec = pipe.step(row, id);

        if (c >= 2 && c <= img.height + 1) {
            // the latch now holds row c-2's indices and foreground, together
            uint32_t r = c - 2;
            std::span<const uint8_t> px(img.row(r), img.width);
            BitmapRow b = bitmap_row(px);
            CHECK(pipe.stage2().row == int64_t(r));
            CHECK(pipe.stage2().indices == run_start_indices(transitions(b)));
            CHECK(pipe.stage2().foreground == extract_foreground(px, b));
        }
        if (rec.stage3_row >= 0) {
            uint32_t r = uint32_t(rec.stage3_row);
            std::span<const uint8_t> px(img.row(r), img.width);
            BitmapRow b = bitmap_row(px);
            IndexList idx = run_start_indices(transitions(b));
            CHECK(rec.bg_bytes == row_record_size(idx, lay));
            CHECK(rec.fg_symbols == b.popcount());
        }
    }
}

TEST_CASE("trace export is line oriented with a header") {
    Image img(6, 3);
    img.pixels[7] = 50;
    SimTrace trace = simulate(img);
    std::ostringstream os;
    write_trace_csv(trace, os);
    std::string text = os.str();
    CHECK(text.rfind("cycle,stage1_row,stage2_row,stage3_row,bytes_emitted\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 5);  // header + H+2 cycles
}

TEST_CASE("empty images cannot be simulated") {
    CHECK_THROWS_AS(simulate(Image{}), ConfigError);
}
