#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "macc/bitstream.hpp"

namespace macc {

// Canonical Huffman code over the 8-bit alphabet, fully described by its
// code-length vector. Length 0 marks an absent symbol. Codes are assigned
// shorter-first, ties by ascending symbol value.
struct HuffmanTable {
    std::array<uint8_t, 256> code_lengths{};

    bool empty() const {
        for (uint8_t l : code_lengths)
            if (l) return false;
        return true;
    }

    bool operator==(const HuffmanTable&) const = default;
};

// Canonical code value of one symbol. Lengths can reach 255 on pathological
// histograms, so the value spans four words; bit i of the code is
// bits[i/64] >> (i%64), and emission runs from bit len-1 down to 0.
struct CodeWord {
    uint16_t len = 0;
    std::array<uint64_t, 4> bits{};
};

// Encode-side view: canonical code words for every present symbol.
// Construction validates the length vector (Kraft inequality).
class CanonicalCodes {
public:
    explicit CanonicalCodes(const HuffmanTable& table);

    const CodeWord& operator[](uint8_t symbol) const { return codes_[symbol]; }

    void put(BitWriter& w, uint8_t symbol) const;

private:
    std::array<CodeWord, 256> codes_{};
};

// Optimal prefix code for the histogram, canonicalized. A single-symbol
// alphabet gets code length 1. Throws on an all-zero histogram.
HuffmanTable huffman_build(const std::array<uint64_t, 256>& hist);

// Concatenated canonical codes, MSB-first, final byte zero-padded.
BitBuffer huffman_encode(std::span<const uint8_t> symbols, const HuffmanTable& table);

// Reads exactly n_symbols codes; remaining pad bits are ignored. Throws if
// the bits run out or a code walks off the tree.
std::vector<uint8_t> huffman_decode(std::span<const uint8_t> bytes, const HuffmanTable& table,
                                    uint64_t n_symbols);

// Same, but also reports how many bits of input were consumed.
std::vector<uint8_t> huffman_decode(std::span<const uint8_t> bytes, const HuffmanTable& table,
                                    uint64_t n_symbols, uint64_t& bits_consumed);

// The 256 code lengths as raw bytes.
std::array<uint8_t, 256> serialize_table(const HuffmanTable& table);

// Inverse of serialize_table; rejects length vectors violating the Kraft
// inequality. An all-zero vector is the valid empty table.
HuffmanTable deserialize_table(std::span<const uint8_t> bytes);

}  // namespace macc
