#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "macc/errors.hpp"

namespace macc {

// A bit stream plus its exact bit count (bytes are zero-padded at the end).
struct BitBuffer {
    std::vector<uint8_t> bytes;
    uint64_t bits = 0;

    bool operator==(const BitBuffer&) const = default;
};

// MSB-first bit packer: the first bit written lands in bit 7 of byte 0.
class BitWriter {
public:
    // Emits the n low bits of `value`, most significant of the n first. n <= 57.
    void put_bits(uint64_t value, uint32_t n) {
        acc_ = (acc_ << n) | (value & ((n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1)));
        nacc_ += n;
        while (nacc_ >= 8) {
            nacc_ -= 8;
            bytes_.push_back(uint8_t(acc_ >> nacc_));
        }
        bits_ += n;
    }

    void put_bit(uint32_t b) { put_bits(b & 1, 1); }

    // Splices another stream onto this one, preserving its bit count.
    void append(const BitBuffer& other) {
        uint64_t full = other.bits / 8;
        for (uint64_t i = 0; i < full; ++i) put_bits(other.bytes[i], 8);
        uint32_t rem = uint32_t(other.bits % 8);
        if (rem) put_bits(uint64_t(other.bytes[full]) >> (8 - rem), rem);
    }

    uint64_t bit_count() const { return bits_; }
    uint64_t bytes_completed() const { return bytes_.size(); }

    // Zero-pads the final byte and hands the buffer out.
    BitBuffer finish() {
        if (nacc_ > 0) {
            bytes_.push_back(uint8_t(acc_ << (8 - nacc_)));
            nacc_ = 0;
        }
        acc_ = 0;
        return BitBuffer{std::move(bytes_), bits_};
    }

private:
    std::vector<uint8_t> bytes_;
    uint64_t acc_ = 0;
    uint32_t nacc_ = 0;
    uint64_t bits_ = 0;
};

// MSB-first reader over a byte span.
class BitReader {
public:
    explicit BitReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    uint32_t get_bit() {
        if (pos_ >= bytes_.size() * 8) throw CorruptError("bitstream exhausted");
        uint32_t b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
        ++pos_;
        return b;
    }

    uint64_t bits_consumed() const { return pos_; }

private:
    std::span<const uint8_t> bytes_;
    uint64_t pos_ = 0;
};

}  // namespace macc
