#include "macc/foreground.hpp"

#include "macc/errors.hpp"

namespace macc {

std::vector<uint8_t> extract_foreground(std::span<const uint8_t> row, const BitmapRow& b) {
    if (b.width() != row.size()) throw ConfigError("bitmap width does not match row length");
    std::vector<uint8_t> out;
    out.reserve(b.popcount());
    for (uint32_t i = 0; i < row.size(); ++i) {
        if ((row[i] != 0) != b.get(i)) throw ConfigError("bitmap does not match row contents");
        if (row[i]) out.push_back(row[i]);
    }
    return out;
}

std::vector<uint8_t> residual_encode(std::span<const uint8_t> fg) {
    std::vector<uint8_t> out(fg.size());
    uint8_t prev = 0;
    for (size_t i = 0; i < fg.size(); ++i) {
        out[i] = uint8_t(fg[i] - prev);
        prev = fg[i];
    }
    return out;
}

std::vector<uint8_t> residual_decode(std::span<const uint8_t> residuals) {
    std::vector<uint8_t> out(residuals.size());
    uint8_t prev = 0;
    for (size_t i = 0; i < residuals.size(); ++i) {
        prev = uint8_t(prev + residuals[i]);
        if (prev == 0) throw CorruptError("decoded foreground value of 0");
        out[i] = prev;
    }
    return out;
}

std::array<uint64_t, 256> histogram(std::span<const uint8_t> symbols) {
    std::array<uint64_t, 256> h{};
    for (uint8_t s : symbols) ++h[s];
    return h;
}

}  // namespace macc
