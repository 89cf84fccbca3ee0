#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "macc/errors.hpp"

namespace macc {

// Fixed-width bit vector packed into 64-bit words, bit 0 first.
// Bits past `width` in the last word are kept zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(uint32_t width) : width_(width), words_((width + 63) / 64, 0) {}

    // "0011" -> bit 0 = 0, bit 1 = 0, bit 2 = 1, bit 3 = 1.
    static BitVector from_string(std::string_view s) {
        BitVector v(static_cast<uint32_t>(s.size()));
        for (uint32_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                v.set(i);
            else if (s[i] != '0')
                throw ConfigError("bit string must contain only '0' and '1'");
        }
        return v;
    }

    uint32_t width() const { return width_; }

    bool get(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(uint32_t i, bool value = true) {
        uint64_t mask = uint64_t(1) << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    uint64_t popcount() const {
        uint64_t n = 0;
        for (uint64_t w : words_) n += std::popcount(w);
        return n;
    }

    bool none() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    std::string to_string() const {
        std::string s(width_, '0');
        for (uint32_t i = 0; i < width_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }

    // Zero any bits at positions >= width in the last word.
    void mask_tail() {
        if (width_ & 63) words_.back() &= (uint64_t(1) << (width_ & 63)) - 1;
    }

    bool operator==(const BitVector&) const = default;

private:
    uint32_t width_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace macc
