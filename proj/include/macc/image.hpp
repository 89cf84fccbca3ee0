#pragma once

#include <cstdint>
#include <vector>

#include "macc/errors.hpp"

namespace macc {

// 8-bit grayscale image, row-major. Background pixels are exactly 0,
// foreground (spot) pixels are 1..255.
struct Image {
    uint32_t width = 0;
    uint32_t height = 0;
    std::vector<uint8_t> pixels;  // width * height entries

    Image() = default;
    Image(uint32_t w, uint32_t h, uint8_t fill = 0)
        : width(w), height(h), pixels(uint64_t(w) * h, fill) {
        if (w < 1 || h < 1) throw ConfigError("image dimensions must be at least 1x1");
    }

    uint64_t pixel_count() const { return uint64_t(width) * height; }

    const uint8_t* row(uint32_t r) const { return pixels.data() + uint64_t(r) * width; }
    uint8_t* row(uint32_t r) { return pixels.data() + uint64_t(r) * width; }

    uint8_t at(uint32_t r, uint32_t c) const { return pixels[uint64_t(r) * width + c]; }
    uint8_t& at(uint32_t r, uint32_t c) { return pixels[uint64_t(r) * width + c]; }

    bool operator==(const Image&) const = default;
};

}  // namespace macc
