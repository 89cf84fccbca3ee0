#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "macc/row_scan.hpp"

namespace macc {

// Kept pixels of one row, in order: the significant prefix of
// compact(x=row, y=b). Throws if b is not the bitmap of the row.
std::vector<uint8_t> extract_foreground(std::span<const uint8_t> row, const BitmapRow& b);

// symbols[i] = (v[i] - v[i-1]) mod 256 with v[-1] = 0.
std::vector<uint8_t> residual_encode(std::span<const uint8_t> fg);

// Exact inverse of residual_encode. A decoded value of 0 cannot be a
// foreground pixel and is reported as corruption.
std::vector<uint8_t> residual_decode(std::span<const uint8_t> residuals);

std::array<uint64_t, 256> histogram(std::span<const uint8_t> symbols);

}  // namespace macc
