#include "macc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace macc {

namespace {

uint8_t draw_intensity(const SpotLayoutParams& p, std::mt19937_64& rng) {
    if (p.intensity_law == IntensityLaw::Uniform) {
        std::uniform_int_distribution<int> d(int(p.intensity_a), int(p.intensity_b));
        return uint8_t(d(rng));
    }
    std::normal_distribution<double> d(p.intensity_a, p.intensity_b);
    double v = std::round(d(rng));
    return uint8_t(std::clamp(v, 1.0, 255.0));
}

void validate(const SpotLayoutParams& p) {
    if (p.width < 1 || p.height < 1) throw ConfigError("image dimensions must be at least 1x1");
    if (p.occupancy < 0.0 || p.occupancy > 1.0) throw ConfigError("occupancy must be in [0,1]");
    if (p.intensity_law == IntensityLaw::Uniform) {
        if (p.intensity_a < 1 || p.intensity_b > 255 || p.intensity_a > p.intensity_b)
            throw ConfigError("uniform intensity bounds must satisfy 1 <= lo <= hi <= 255");
    } else if (p.intensity_b < 0) {
        throw ConfigError("gaussian intensity sd must be non-negative");
    }
    if (p.grid_rows == 0 || p.grid_cols == 0) return;  // no spots, nothing to fit

    uint32_t ext_w = p.spot_w;  // disk: diameter
    uint32_t ext_h = p.spot_shape == SpotShape::Disk ? p.spot_w : p.spot_h;
    if (ext_w == 0 || ext_h == 0) throw ConfigError("spot extent must be at least 1 pixel");
    if ((p.grid_cols > 1 || p.grid_rows > 1) && p.pitch < std::max(ext_w, ext_h))
        throw ConfigError("spots would overlap: pitch smaller than spot extent");

    uint64_t need_w = uint64_t(p.margin_x) + uint64_t(p.grid_cols - 1) * p.pitch + ext_w;
    uint64_t need_h = uint64_t(p.margin_y) + uint64_t(p.grid_rows - 1) * p.pitch + ext_h;
    if (need_w > p.width || need_h > p.height)
        throw ConfigError("layout does not fit inside the requested image size");
}

}  // namespace

Image gen_synthetic(const SpotLayoutParams& p) {
    validate(p);
    Image img(p.width, p.height, 0);
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> occ(0.0, 1.0);

    uint32_t ext_w = p.spot_w;
    uint32_t ext_h = p.spot_shape == SpotShape::Disk ? p.spot_w : p.spot_h;

    for (uint32_t gr = 0; gr < p.grid_rows; ++gr) {
        for (uint32_t gc = 0; gc < p.grid_cols; ++gc) {
            bool present;
            if (p.occupancy >= 1.0)
                present = true;
            else if (p.occupancy <= 0.0)
                present = false;
            else
                present = occ(rng) < p.occupancy;
            if (!present) continue;

            uint32_t top = p.margin_y + gr * p.pitch;
            uint32_t left = p.margin_x + gc * p.pitch;

            if (p.spot_shape == SpotShape::Rect) {
                for (uint32_t r = 0; r < ext_h; ++r)
                    for (uint32_t c = 0; c < ext_w; ++c)
                        img.at(top + r, left + c) = draw_intensity(p, rng);
            } else {
                double radius = p.spot_w / 2.0;
                double cy = top + (p.spot_w - 1) / 2.0;
                double cx = left + (p.spot_w - 1) / 2.0;
                for (uint32_t r = 0; r < ext_h; ++r) {
                    for (uint32_t c = 0; c < ext_w; ++c) {
                        double dy = top + r - cy, dx = left + c - cx;
                        if (dy * dy + dx * dx <= radius * radius)
                            img.at(top + r, left + c) = draw_intensity(p, rng);
                    }
                }
            }
        }
    }
    return img;
}

SpotLayoutParams fig8_params() {
    SpotLayoutParams p;
    p.width = 18;
    p.height = 18;
    p.grid_rows = 2;
    p.grid_cols = 2;
    p.spot_shape = SpotShape::Rect;
    p.spot_w = 4;                     // spot columns 3..6 and 11..14
    p.spot_h = 6;                     // spot rows 2..7 and 10..15
    p.pitch = 8;
    p.margin_x = 3;
    p.margin_y = 2;
    p.occupancy = 1.0;
    p.intensity_law = IntensityLaw::Uniform;
    p.intensity_a = 100;
    p.intensity_b = 200;
    p.seed = 1;
    return p;
}

}  // namespace macc
