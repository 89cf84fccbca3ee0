#include "macc/compactor.hpp"

namespace macc {

RuGrid derive_controls(const BitVector& y) {
    const uint32_t n = y.width();
    RuGrid grid;
    grid.width = n;
    grid.cells.assign(uint64_t(n) * n, RuControl{0, 0});

    // dead[j]: slot j currently holds a value that must be dropped. Filler
    // zeros entering from the right boundary count as kept.
    std::vector<uint8_t> dead(n);
    for (uint32_t j = 0; j < n; ++j) dead[j] = !y.get(j);

    for (uint32_t s = 0; s < n; ++s) {
        uint32_t hole = n;
        for (uint32_t j = 0; j < n; ++j) {
            if (dead[j]) {
                hole = j;
                break;
            }
        }
        if (hole == n) break;  // remaining stages stay all-(0,0): identity

        for (uint32_t j = hole; j < n; ++j) grid.at(s, j) = RuControl{1, 0};
        for (uint32_t j = hole; j + 1 < n; ++j) dead[j] = dead[j + 1];
        dead[n - 1] = 0;
    }
    return grid;
}

}  // namespace macc
