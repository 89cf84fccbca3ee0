#include "macc/huffman.hpp"

#include <algorithm>
#include <cstring>

#include "macc/errors.hpp"

namespace macc {

namespace {

// 256-bit helpers for canonical code values (lengths may exceed 64).
using Word4 = std::array<uint64_t, 4>;

void add_one(Word4& v) {
    for (auto& w : v)
        if (++w != 0) break;
}

void shift_left(Word4& v, uint32_t k) {
    if (k == 0) return;
    uint32_t words = k / 64, bits = k % 64;
    for (int i = 3; i >= 0; --i) {
        uint64_t w = 0;
        int src = i - int(words);
        if (src >= 0) {
            w = v[src] << bits;
            if (bits && src > 0) w |= v[src - 1] >> (64 - bits);
        }
        v[i] = w;
    }
}

// True when all bits at positions >= len are zero, i.e. the value fits.
bool fits(const Word4& v, uint32_t len) {
    if (len >= 256) return true;
    uint32_t word = len / 64, bit = len % 64;
    if (v[word] >> bit) return false;
    for (uint32_t w = word + 1; w < 4; ++w)
        if (v[w]) return false;
    return true;
}

uint64_t extract_bits(const Word4& v, uint32_t pos, uint32_t n) {
    uint32_t word = pos / 64, off = pos % 64;
    uint64_t x = v[word] >> off;
    if (off && word + 1 < 4) x |= v[word + 1] << (64 - off);
    if (n < 64) x &= (uint64_t(1) << n) - 1;
    return x;
}

}  // namespace

CanonicalCodes::CanonicalCodes(const HuffmanTable& table) {
    // Symbols ordered by (length, symbol); consecutive code assignment
    // overflowing its own length means the lengths violate Kraft.
    std::vector<uint16_t> order;
    order.reserve(256);
    for (int s = 0; s < 256; ++s)
        if (table.code_lengths[s]) order.push_back(uint16_t(s));
    std::stable_sort(order.begin(), order.end(), [&](uint16_t a, uint16_t b) {
        return table.code_lengths[a] < table.code_lengths[b];
    });

    Word4 code{};
    uint32_t prev_len = 0;
    for (size_t i = 0; i < order.size(); ++i) {
        uint32_t len = table.code_lengths[order[i]];
        if (i == 0) {
            prev_len = len;
        } else {
            add_one(code);
            shift_left(code, len - prev_len);
            prev_len = len;
        }
        if (!fits(code, len)) throw ParseError("code lengths violate the Kraft inequality");
        codes_[order[i]] = CodeWord{uint16_t(len), code};
    }
}

void CanonicalCodes::put(BitWriter& w, uint8_t symbol) const {
    const CodeWord& c = codes_[symbol];
    if (c.len == 0) throw ConfigError("symbol absent from Huffman table");
    uint32_t rem = c.len;
    while (rem) {
        uint32_t n = std::min<uint32_t>(rem, 32);
        w.put_bits(extract_bits(c.bits, rem - n, n), n);
        rem -= n;
    }
}

HuffmanTable huffman_build(const std::array<uint64_t, 256>& hist) {
    std::vector<uint16_t> leaves;
    for (int s = 0; s < 256; ++s)
        if (hist[s]) leaves.push_back(uint16_t(s));
    if (leaves.empty()) throw ConfigError("empty histogram");

    HuffmanTable table;
    if (leaves.size() == 1) {
        table.code_lengths[leaves[0]] = 1;
        return table;
    }

    // Two-queue construction: leaves sorted by (count, symbol); internal
    // nodes come out in nondecreasing weight, so a FIFO suffices.
    std::sort(leaves.begin(), leaves.end(), [&](uint16_t a, uint16_t b) {
        return hist[a] != hist[b] ? hist[a] < hist[b] : a < b;
    });

    struct Node {
        unsigned __int128 weight;
        int parent = -1;
    };
    std::vector<Node> nodes;
    nodes.reserve(leaves.size() * 2 - 1);
    for (uint16_t s : leaves) nodes.push_back({hist[s], -1});

    size_t leaf_pos = 0;
    std::vector<int> internal;
    internal.reserve(leaves.size() - 1);
    size_t internal_pos = 0;

    auto take_min = [&]() -> int {
        bool leaf_ok = leaf_pos < leaves.size();
        bool int_ok = internal_pos < internal.size();
        if (leaf_ok && (!int_ok || nodes[leaf_pos].weight <= nodes[internal[internal_pos]].weight))
            return int(leaf_pos++);
        return internal[internal_pos++];
    };

    for (size_t i = 1; i < leaves.size(); ++i) {
        int a = take_min();
        int b = take_min();
        int id = int(nodes.size());
        nodes.push_back({nodes[a].weight + nodes[b].weight, -1});
        nodes[a].parent = id;
        nodes[b].parent = id;
        internal.push_back(id);
    }

    for (size_t i = 0; i < leaves.size(); ++i) {
        uint32_t depth = 0;
        for (int n = int(i); nodes[n].parent != -1; n = nodes[n].parent) ++depth;
        table.code_lengths[leaves[i]] = uint8_t(depth);
    }
    return table;
}

BitBuffer huffman_encode(std::span<const uint8_t> symbols, const HuffmanTable& table) {
    CanonicalCodes codes(table);
    BitWriter w;
    for (uint8_t s : symbols) codes.put(w, s);
    return w.finish();
}

namespace {

// Binary decode trie built from the canonical codes.
struct DecodeTree {
    struct Node {
        int32_t child[2] = {-1, -1};
        int16_t symbol = -1;
    };
    std::vector<Node> nodes;

    explicit DecodeTree(const HuffmanTable& table) {
        CanonicalCodes codes(table);  // validates the lengths
        nodes.emplace_back();
        for (int s = 0; s < 256; ++s) {
            uint32_t len = table.code_lengths[s];
            if (!len) continue;
            int cur = 0;
            for (uint32_t i = len; i-- > 0;) {
                uint32_t bit = extract_bits(codes[uint8_t(s)].bits, i, 1) & 1;
                if (nodes[cur].child[bit] == -1) {
                    nodes[cur].child[bit] = int32_t(nodes.size());
                    nodes.emplace_back();
                }
                cur = nodes[cur].child[bit];
            }
            nodes[cur].symbol = int16_t(s);
        }
    }
};

}  // namespace

std::vector<uint8_t> huffman_decode(std::span<const uint8_t> bytes, const HuffmanTable& table,
                                    uint64_t n_symbols, uint64_t& bits_consumed) {
    std::vector<uint8_t> out;
    if (n_symbols == 0) {
        bits_consumed = 0;
        return out;
    }
    if (table.empty()) throw CorruptError("empty Huffman table with non-empty payload");

    DecodeTree tree(table);
    BitReader r(bytes);
    out.reserve(n_symbols);
    for (uint64_t i = 0; i < n_symbols; ++i) {
        int cur = 0;
        while (tree.nodes[cur].symbol < 0) {
            cur = tree.nodes[cur].child[r.get_bit()];
            if (cur == -1) throw CorruptError("invalid Huffman code");
        }
        out.push_back(uint8_t(tree.nodes[cur].symbol));
    }
    bits_consumed = r.bits_consumed();
    return out;
}

std::vector<uint8_t> huffman_decode(std::span<const uint8_t> bytes, const HuffmanTable& table,
                                    uint64_t n_symbols) {
    uint64_t bits = 0;
    return huffman_decode(bytes, table, n_symbols, bits);
}

std::array<uint8_t, 256> serialize_table(const HuffmanTable& table) {
    return table.code_lengths;
}

HuffmanTable deserialize_table(std::span<const uint8_t> bytes) {
    if (bytes.size() != 256) throw ParseError("Huffman table must be exactly 256 bytes");
    HuffmanTable table;
    std::memcpy(table.code_lengths.data(), bytes.data(), 256);
    if (!table.empty()) CanonicalCodes check(table);  // throws on Kraft violation
    return table;
}

}  // namespace macc
