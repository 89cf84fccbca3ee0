#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "macc/bitvec.hpp"

namespace macc {

// Foreground mask of one image row: bit j set iff pixel j is non-zero.
struct BitmapRow : BitVector {
    BitmapRow() = default;
    explicit BitmapRow(uint32_t width) : BitVector(width) {}
    explicit BitmapRow(BitVector v) : BitVector(std::move(v)) {}
};

// Run-start markers: bit j set iff bitmap bit j differs from bit j-1,
// where bit -1 is taken to be 0. Bit 0 therefore equals bitmap bit 0.
struct TransitionRow : BitVector {
    TransitionRow() = default;
    explicit TransitionRow(uint32_t width) : BitVector(width) {}
    explicit TransitionRow(BitVector v) : BitVector(std::move(v)) {}
};

// Run-start column positions of one row, strictly increasing. The first
// index starts a run of 1s and run types alternate from there; an empty
// list means an all-zero row.
using IndexList = std::vector<uint32_t>;

BitmapRow bitmap_row(std::span<const uint8_t> row);
TransitionRow transitions(const BitmapRow& b);
IndexList run_start_indices(const TransitionRow& t);

}  // namespace macc
