#pragma once

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "macc/bitvec.hpp"
#include "macc/errors.hpp"

namespace macc {

// Input pair of a compression unit: values x and keep-mask y of equal width.
template <typename T>
struct MaskedVector {
    std::vector<T> x;
    BitVector y;

    uint32_t width() const { return y.width(); }
};

// Control pair of one routing unit. (cin1, cin2) selects the action:
//   (0,0) up_in -> down_out
//   (1,0) right_in -> down_out
//   (0,1) up_in -> left_out
//   (1,1) right_in -> down_out
struct RuControl {
    uint8_t cin1 = 0;
    uint8_t cin2 = 0;

    bool operator==(const RuControl&) const = default;
};

// N x N grid of routing-unit controls, stage-major. Stage s consumes the
// previous stage's down bus; each stage can close at most one hole, so N
// stages suffice for any mask.
struct RuGrid {
    uint32_t width = 0;
    std::vector<RuControl> cells;  // width * width entries

    const RuControl& at(uint32_t stage, uint32_t col) const {
        return cells[uint64_t(stage) * width + col];
    }
    RuControl& at(uint32_t stage, uint32_t col) {
        return cells[uint64_t(stage) * width + col];
    }
};

// One routing unit. Returns {down_out, left_out}; the output not driven by
// the selected action is 0.
template <typename T>
std::pair<T, T> ru_route(T up_in, T right_in, RuControl c) {
    if (c.cin1) return {right_in, T(0)};      // (1,0) and (1,1) act alike
    if (c.cin2) return {T(0), up_in};         // (0,1)
    return {up_in, T(0)};                     // (0,0)
}

// Behavioral compaction: keep x[i] where y[i]=1, packed leftward in order,
// zero-filled tail.
template <typename T>
std::vector<T> compact(const MaskedVector<T>& mv) {
    if (mv.x.size() != mv.y.width()) throw ConfigError("masked vector: x and y widths differ");
    std::vector<T> out(mv.x.size(), T(0));
    size_t k = 0;
    for (uint32_t i = 0; i < mv.y.width(); ++i)
        if (mv.y.get(i)) out[k++] = mv.x[i];
    return out;
}

// Control matrix for which cu_structural computes compact(x, y): stage k
// closes the k-th hole (leftmost slot still holding a masked-out value);
// cells left of the hole pass down, the hole cell and everything right of
// it take from the right neighbor's up bus.
RuGrid derive_controls(const BitVector& y);

// Stage-by-stage evaluation of the routing-unit grid. Cell j's right input
// taps the up bus of column j+1; the rightmost cell's right input is tied
// to 0. If `stage_trace` is given, one line of down-bus values is written
// per stage.
template <typename T>
std::vector<T> cu_structural(const MaskedVector<T>& mv, const RuGrid& grid,
                             std::ostream* stage_trace = nullptr) {
    const uint32_t n = mv.y.width();
    if (mv.x.size() != n) throw ConfigError("masked vector: x and y widths differ");
    if (grid.width != n) throw ConfigError("routing grid width does not match input width");

    std::vector<T> bus = mv.x;
    std::vector<T> next(n);
    for (uint32_t s = 0; s < n; ++s) {
        for (uint32_t j = 0; j < n; ++j) {
            T right = (j + 1 < n) ? bus[j + 1] : T(0);
            next[j] = ru_route(bus[j], right, grid.at(s, j)).first;
        }
        bus.swap(next);
        if (stage_trace) {
            *stage_trace << "stage " << s << ":";
            for (T v : bus) *stage_trace << ' ' << uint64_t(v);
            *stage_trace << '\n';
        }
    }
    return bus;
}

}  // namespace macc
