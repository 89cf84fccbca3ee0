#pragma once

#include <cstdint>

#include "macc/image.hpp"

namespace macc {

enum class SpotShape : uint8_t { Disk, Rect };
enum class IntensityLaw : uint8_t { Uniform, Gaussian };

// Layout of a regular spot grid for the synthetic image generator. Spots
// sit on a grid with fixed pitch; background pixels are exactly 0.
struct SpotLayoutParams {
    uint32_t width = 256;
    uint32_t height = 256;
    uint32_t grid_rows = 10;
    uint32_t grid_cols = 10;

    SpotShape spot_shape = SpotShape::Disk;
    uint32_t spot_w = 12;  // disk: diameter (spot_h ignored)
    uint32_t spot_h = 12;

    uint32_t pitch = 24;     // pixels between spot anchors
    uint32_t margin_x = 8;   // left border before the first spot column
    uint32_t margin_y = 8;   // top border before the first spot row

    double occupancy = 1.0;  // probability a grid cell holds a spot

    IntensityLaw intensity_law = IntensityLaw::Gaussian;
    double intensity_a = 180.0;  // uniform: lo,  gaussian: mean
    double intensity_b = 12.0;   // uniform: hi,  gaussian: sd

    uint64_t seed = 1;
};

// Deterministic for a given params+seed. All non-spot pixels are 0, spot
// pixels are 1..255. Throws ConfigError when the layout does not fit or
// spots would overlap.
Image gen_synthetic(const SpotLayoutParams& params);

// The canonical 18x18 four-spot test layout: two rows and two columns of
// 6x4 rectangular spots (24 pixels each), 96 foreground pixels total,
// 48 run-start indices, 6 all-zero rows.
SpotLayoutParams fig8_params();

}  // namespace macc
