#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "macc/bitstream.hpp"
#include "macc/huffman.hpp"
#include "macc/image.hpp"
#include "macc/row_scan.hpp"

namespace macc {

// Execution policy of the batch kernels. Serial is the straight-line
// reference; Parallel uses OpenMP and must produce byte-identical results.
enum class Exec : uint8_t { Serial, Parallel };

namespace kernels {

// Per-row scan products of a whole image.
struct ImageScan {
    std::vector<IndexList> row_indices;  // run-start indices per row
    std::vector<uint8_t> foreground;     // kept pixels, raster order
    std::vector<uint64_t> fg_offsets;    // height+1 prefix of per-row kept counts
};

ImageScan scan_image(const Image& img, Exec exec);

std::vector<uint8_t> encode_background(const std::vector<IndexList>& rows, uint32_t width,
                                       Exec exec);

std::array<uint64_t, 256> histogram(std::span<const uint8_t> symbols, Exec exec);

std::vector<uint8_t> residual_encode(std::span<const uint8_t> fg, Exec exec);
std::vector<uint8_t> residual_decode(std::span<const uint8_t> residuals, Exec exec);

BitBuffer huffman_encode(std::span<const uint8_t> symbols, const HuffmanTable& table, Exec exec);

std::vector<BitmapRow> decode_background(std::span<const uint8_t> bytes, uint32_t width,
                                         uint32_t height, Exec exec);

// Places foreground values back at the bitmap-1 positions, raster order.
Image scatter_foreground(uint32_t width, uint32_t height, const std::vector<BitmapRow>& bitmaps,
                         std::span<const uint8_t> fg, Exec exec);

}  // namespace kernels
}  // namespace macc
