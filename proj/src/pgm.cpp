#include "macc/pgm.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "macc/errors.hpp"

namespace macc {

namespace {

bool is_pnm_space(uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Skips whitespace and '#' comments (which run to end of line).
void skip_space(std::span<const uint8_t> b, size_t& pos) {
    while (pos < b.size()) {
        if (is_pnm_space(b[pos])) {
            ++pos;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
}

uint64_t read_number(std::span<const uint8_t> b, size_t& pos) {
    skip_space(b, pos);
    if (pos >= b.size() || b[pos] < '0' || b[pos] > '9')
        throw ParseError("malformed PGM header");
    uint64_t v = 0;
    while (pos < b.size() && b[pos] >= '0' && b[pos] <= '9') {
        v = v * 10 + (b[pos] - '0');
        if (v > 0xFFFFFFFFull) throw ParseError("PGM dimension out of range");
        ++pos;
    }
    return v;
}

}  // namespace

Image load_pgm(std::span<const uint8_t> bytes) {
    size_t pos = 0;
    skip_space(bytes, pos);
    if (pos + 2 > bytes.size() || bytes[pos] != 'P' || bytes[pos + 1] != '5')
        throw ParseError("malformed PGM header: not a binary P5 file");
    pos += 2;

    uint64_t w = read_number(bytes, pos);
    uint64_t h = read_number(bytes, pos);
    uint64_t maxval = read_number(bytes, pos);
    if (w < 1 || h < 1) throw ParseError("malformed PGM header: zero dimension");
    if (maxval < 1 || maxval > 255) throw ParseError("unsupported maxval (must be 1..255)");

    // Exactly one whitespace byte separates the header from the payload.
    if (pos >= bytes.size() || !is_pnm_space(bytes[pos]))
        throw ParseError("malformed PGM header: missing payload separator");
    ++pos;

    uint64_t n = w * h;
    if (bytes.size() - pos < n) throw ParseError("truncated PGM payload");

    Image img(static_cast<uint32_t>(w), static_cast<uint32_t>(h));
    std::copy(bytes.begin() + pos, bytes.begin() + pos + n, img.pixels.begin());
    return img;
}

std::vector<uint8_t> store_pgm(const Image& img) {
    char header[64];
    int len = std::snprintf(header, sizeof header, "P5\n%u %u\n255\n", img.width, img.height);
    std::vector<uint8_t> out;
    out.reserve(size_t(len) + img.pixels.size());
    out.insert(out.end(), header, header + len);
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

Image load_pgm_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open file: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                               std::istreambuf_iterator<char>());
    return load_pgm(bytes);
}

void store_pgm_file(const Image& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open file for writing: " + path);
    auto bytes = store_pgm(img);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) throw Error("write failed: " + path);
}

}  // namespace macc
