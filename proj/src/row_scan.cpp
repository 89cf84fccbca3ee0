#include "macc/row_scan.hpp"

#include <bit>

namespace macc {

BitmapRow bitmap_row(std::span<const uint8_t> row) {
    BitmapRow b(static_cast<uint32_t>(row.size()));
    auto words = b.words();
    for (uint32_t i = 0; i < row.size(); ++i)
        if (row[i]) words[i >> 6] |= uint64_t(1) << (i & 63);
    return b;
}

TransitionRow transitions(const BitmapRow& b) {
    TransitionRow t(b.width());
    auto src = b.words();
    auto dst = t.words();
    uint64_t carry = 0;  // bit -1 of the row is 0
    for (size_t w = 0; w < src.size(); ++w) {
        dst[w] = src[w] ^ ((src[w] << 1) | carry);
        carry = src[w] >> 63;
    }
    t.mask_tail();
    return t;
}

IndexList run_start_indices(const TransitionRow& t) {
    IndexList idx;
    idx.reserve(t.popcount());
    auto words = t.words();
    for (size_t w = 0; w < words.size(); ++w) {
        uint64_t bits = words[w];
        while (bits) {
            idx.push_back(uint32_t(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return idx;
}

}  // namespace macc
