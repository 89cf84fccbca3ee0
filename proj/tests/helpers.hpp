#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "macc/huffman.hpp"
#include "macc/image.hpp"
#include "macc/synthetic.hpp"

namespace testutil {

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

// Random image with the given zero-pixel probability; dims in [1, max].
inline macc::Image random_image(std::mt19937_64& g, uint32_t max_w, uint32_t max_h,
                                double zero_prob) {
    std::uniform_int_distribution<uint32_t> dw(1, max_w), dh(1, max_h);
    std::uniform_int_distribution<int> dv(1, 255);
    std::uniform_real_distribution<double> dz(0.0, 1.0);
    macc::Image img(dw(g), dh(g));
    for (auto& p : img.pixels) p = dz(g) < zero_prob ? 0 : uint8_t(dv(g));
    return img;
}

// Microarray-like synthetic with randomized layout parameters.
inline macc::Image random_synthetic(std::mt19937_64& g) {
    std::uniform_int_distribution<uint32_t> dgrid(1, 6), dspot(3, 14), dseed(0, 1u << 30);
    macc::SpotLayoutParams p;
    p.grid_rows = dgrid(g);
    p.grid_cols = dgrid(g);
    p.spot_w = p.spot_h = dspot(g);
    p.spot_shape = (g() & 1) ? macc::SpotShape::Disk : macc::SpotShape::Rect;
    if (p.spot_shape == macc::SpotShape::Rect) p.spot_h = dspot(g);
    uint32_t ext = std::max(p.spot_w, p.spot_h);
    p.pitch = ext + uint32_t(g() % 8);
    p.margin_x = uint32_t(g() % 6);
    p.margin_y = uint32_t(g() % 6);
    p.width = p.margin_x + (p.grid_cols - 1) * p.pitch + p.spot_w + uint32_t(g() % 9);
    p.height = p.margin_y + (p.grid_rows - 1) * p.pitch + ext + uint32_t(g() % 9);
    p.occupancy = 0.25 + 0.75 * std::uniform_real_distribution<double>(0, 1)(g);
    p.intensity_law = (g() & 1) ? macc::IntensityLaw::Gaussian : macc::IntensityLaw::Uniform;
    if (p.intensity_law == macc::IntensityLaw::Uniform) {
        p.intensity_a = 40;
        p.intensity_b = 220;
    } else {
        p.intensity_a = 170;
        p.intensity_b = 15;
    }
    p.seed = dseed(g);
    return macc::gen_synthetic(p);
}

// Connected components of non-zero pixels (4-neighborhood).
inline uint32_t count_spots(const macc::Image& img) {
    std::vector<uint8_t> seen(img.pixel_count(), 0);
    uint32_t spots = 0;
    std::vector<uint64_t> stack;
    for (uint64_t i = 0; i < img.pixel_count(); ++i) {
        if (!img.pixels[i] || seen[i]) continue;
        ++spots;
        stack.push_back(i);
        seen[i] = 1;
        while (!stack.empty()) {
            uint64_t at = stack.back();
            stack.pop_back();
            uint64_t r = at / img.width, c = at % img.width;
            auto visit = [&](uint64_t rr, uint64_t cc) {
                uint64_t j = rr * img.width + cc;
                if (!seen[j] && img.pixels[j]) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
            };
            if (r > 0) visit(r - 1, c);
            if (r + 1 < img.height) visit(r + 1, c);
            if (c > 0) visit(r, c - 1);
            if (c + 1 < img.width) visit(r, c + 1);
        }
    }
    return spots;
}

// All distinct sorted leaf-depth profiles of full binary trees with k leaves.
inline const std::set<std::vector<uint32_t>>& tree_depth_profiles(uint32_t k) {
    static std::map<uint32_t, std::set<std::vector<uint32_t>>> memo;
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    std::set<std::vector<uint32_t>> out;
    if (k == 1) {
        out.insert({0});
    } else {
        for (uint32_t i = 1; i < k; ++i) {
            for (const auto& a : tree_depth_profiles(i)) {
                for (const auto& b : tree_depth_profiles(k - i)) {
                    std::vector<uint32_t> merged;
                    merged.reserve(k);
                    for (uint32_t d : a) merged.push_back(d + 1);
                    for (uint32_t d : b) merged.push_back(d + 1);
                    std::sort(merged.begin(), merged.end());
                    out.insert(std::move(merged));
                }
            }
        }
    }
    return memo.emplace(k, std::move(out)).first->second;
}

// Exhaustive-search optimum of sum(count * depth) over all prefix-code
// shapes; independent oracle for Huffman optimality, k <= 8.
inline uint64_t brute_force_prefix_cost(std::vector<uint64_t> counts) {
    std::sort(counts.begin(), counts.end(), std::greater<>());
    uint64_t best = ~uint64_t(0);
    for (const auto& profile : tree_depth_profiles(uint32_t(counts.size()))) {
        uint64_t cost = 0;  // profile ascending, counts descending: optimal pairing
        for (size_t i = 0; i < counts.size(); ++i) cost += counts[i] * profile[i];
        best = std::min(best, cost);
    }
    return best;
}

// Keep-the-nonzeros reference filter.
inline std::vector<uint8_t> filter_nonzero(std::span<const uint8_t> row) {
    std::vector<uint8_t> out;
    for (uint8_t v : row)
        if (v) out.push_back(v);
    return out;
}

// Exact Kraft check on the length vector alone, via per-length counters:
// sum of 2^-len <= 1 iff nothing carries past the root.
inline bool kraft_holds(const macc::HuffmanTable& t) {
    std::array<uint64_t, 256> count{};
    for (uint8_t len : t.code_lengths)
        if (len) ++count[len];
    uint64_t rem_any = 0;
    for (int len = 255; len >= 1; --len) {
        rem_any |= count[len] & 1;
        count[len - 1] += count[len] / 2;
    }
    return count[0] == 0 || (count[0] == 1 && rem_any == 0);
}

// Trie insertion over the actual canonical code words; any insert that
// lands on or passes a leaf is a prefix clash.
inline bool prefix_free(const macc::HuffmanTable& t) {
    macc::CanonicalCodes codes(t);
    struct Node {
        int child[2] = {-1, -1};
        bool leaf = false;
    };
    std::vector<Node> trie(1);
    for (int s = 0; s < 256; ++s) {
        uint32_t len = t.code_lengths[s];
        if (!len) continue;
        int cur = 0;
        for (uint32_t i = len; i-- > 0;) {
            if (trie[cur].leaf) return false;
            uint32_t bit = uint32_t(codes[uint8_t(s)].bits[i / 64] >> (i % 64)) & 1;
            if (trie[cur].child[bit] == -1) {
                trie[cur].child[bit] = int(trie.size());
                trie.emplace_back();
            }
            cur = trie[cur].child[bit];
        }
        if (trie[cur].leaf || trie[cur].child[0] != -1 || trie[cur].child[1] != -1) return false;
        trie[cur].leaf = true;
    }
    return true;
}

}  // namespace testutil
