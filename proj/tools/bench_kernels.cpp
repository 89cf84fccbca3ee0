// Serial reference vs OpenMP kernel benchmarks over a synthetic microarray
// image. Run with --benchmark_filter=... to narrow.

#include <benchmark/benchmark.h>

#include "macc/container.hpp"
#include "macc/foreground.hpp"
#include "macc/huffman.hpp"
#include "macc/kernels.hpp"
#include "macc/synthetic.hpp"

using macc::Exec;

namespace {

macc::Image bench_image() {
    macc::SpotLayoutParams p;
    p.width = 2048;
    p.height = 2048;
    p.grid_rows = 80;
    p.grid_cols = 80;
    p.spot_shape = macc::SpotShape::Disk;
    p.spot_w = p.spot_h = 12;
    p.pitch = 25;
    p.margin_x = p.margin_y = 12;
    p.occupancy = 0.9;
    p.seed = 7;
    return macc::gen_synthetic(p);
}

const macc::Image& img() {
    static macc::Image i = bench_image();
    return i;
}

const macc::kernels::ImageScan& scan() {
    static macc::kernels::ImageScan s = macc::kernels::scan_image(img(), Exec::Serial);
    return s;
}

const std::vector<uint8_t>& residuals() {
    static std::vector<uint8_t> r = macc::residual_encode(scan().foreground);
    return r;
}

const macc::HuffmanTable& table() {
    static macc::HuffmanTable t = macc::huffman_build(macc::histogram(residuals()));
    return t;
}

void bm_scan_image(benchmark::State& state, Exec exec) {
    for (auto _ : state)
        benchmark::DoNotOptimize(macc::kernels::scan_image(img(), exec));
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(img().pixel_count()));
}

void bm_encode_background(benchmark::State& state, Exec exec) {
    for (auto _ : state)
        benchmark::DoNotOptimize(macc::kernels::encode_background(scan().row_indices,
                                                                  img().width, exec));
}

void bm_residual_encode(benchmark::State& state, Exec exec) {
    for (auto _ : state)
        benchmark::DoNotOptimize(macc::kernels::residual_encode(scan().foreground, exec));
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(scan().foreground.size()));
}

void bm_residual_decode(benchmark::State& state, Exec exec) {
    for (auto _ : state)
        benchmark::DoNotOptimize(macc::kernels::residual_decode(residuals(), exec));
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(residuals().size()));
}

void bm_histogram(benchmark::State& state, Exec exec) {
    for (auto _ : state)
        benchmark::DoNotOptimize(macc::kernels::histogram(residuals(), exec));
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(residuals().size()));
}

void bm_huffman_encode(benchmark::State& state, Exec exec) {
    for (auto _ : state)
        benchmark::DoNotOptimize(macc::kernels::huffman_encode(residuals(), table(), exec));
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(residuals().size()));
}

void bm_compress(benchmark::State& state, Exec exec) {
    for (auto _ : state)
        benchmark::DoNotOptimize(macc::compress(img(), exec));
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(img().pixel_count()));
}

void bm_decompress(benchmark::State& state, Exec exec) {
    macc::CompressedStream cs = macc::compress(img(), Exec::Serial);
    for (auto _ : state)
        benchmark::DoNotOptimize(macc::decompress(cs, exec));
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(img().pixel_count()));
}

}  // namespace

BENCHMARK_CAPTURE(bm_scan_image, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_scan_image, parallel, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_encode_background, serial, Exec::Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(bm_encode_background, parallel, Exec::Parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(bm_residual_encode, serial, Exec::Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(bm_residual_encode, parallel, Exec::Parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(bm_residual_decode, serial, Exec::Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(bm_residual_decode, parallel, Exec::Parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(bm_histogram, serial, Exec::Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(bm_histogram, parallel, Exec::Parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(bm_huffman_encode, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_huffman_encode, parallel, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_compress, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_compress, parallel, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_decompress, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_decompress, parallel, Exec::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
