#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "macc/image.hpp"

namespace macc {

// Binary PGM ("P5") with maxval <= 255. Comments (#) are accepted anywhere
// whitespace is legal in the header; bytes after the payload are ignored.
Image load_pgm(std::span<const uint8_t> bytes);

// Canonical form: "P5\n<w> <h>\n255\n" followed by the raw row-major pixels.
std::vector<uint8_t> store_pgm(const Image& img);

Image load_pgm_file(const std::string& path);
void store_pgm_file(const Image& img, const std::string& path);

}  // namespace macc
