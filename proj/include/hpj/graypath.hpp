#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hpj/bitstring.hpp"

namespace hpj {

// 0-based position in the binary-reflected gray code on N bits.
using GrayWordIndex = std::uint64_t;
// 1-based position on the expanded path.
using ExpandedIndex = std::uint64_t;

// Binary-reflected gray code word m on `bits` bits, most significant bit
// leftmost: gray_word(3, 3) == "010".
BitString gray_word(GrayWordIndex m, std::size_t bits);
GrayWordIndex gray_rank(const BitString& word);

// Integer forms of the above (bit N-1-p of the integer is character p).
constexpr std::uint64_t gray_encode(std::uint64_t m) noexcept { return m ^ (m >> 1); }
constexpr std::uint64_t gray_decode(std::uint64_t g) noexcept {
    for (unsigned shift = 1; shift < 64; shift <<= 1)
        g ^= g >> shift;
    return g;
}

// The gray code on N bits with every bit repeated r times, and each
// single-bit transition between consecutive words filled in one bit at a
// time: 0^r -> 1^r via 0^{r-t}1^t, 1^r -> 0^r via 0^t1^{r-t}. Points are
// generated and ranked on demand; the path is never stored.
//
// Index j (1-based) decomposes as q = (j-1) / r, t = (j-1) % r: the
// expansion of gray word q with its outgoing transition block advanced t
// steps. The uniform point that completes a transition belongs to the next
// word, so every point has exactly one index.
class ExpandedGrayPath {
public:
    // Requires 1 <= word_bits <= 63, 1 <= block <= 64 and a length that
    // fits in 64 bits.
    ExpandedGrayPath(std::size_t word_bits, std::size_t block);

    std::size_t word_bits() const noexcept { return word_bits_; }
    std::size_t block() const noexcept { return block_; }
    std::size_t bits() const noexcept { return word_bits_ * block_; }
    // M = r (2^N - 1) + 1.
    ExpandedIndex size() const noexcept { return size_; }

    BitString point(ExpandedIndex j) const;
    // Writes point j into `out` at positions [offset, offset + bits()).
    // Those positions must be zero on entry.
    void write_point(ExpandedIndex j, BitString& out, std::size_t offset = 0) const;

    std::optional<ExpandedIndex> rank(const BitString& p) const;
    // Ranks the window [offset, offset + bits()) of a longer string.
    std::optional<ExpandedIndex> rank(const BitString& p, std::size_t offset) const noexcept;

    // Exact Hamming distance between points j1 and j2. Within one block
    // length the answer is |j1 - j2| and no point is built.
    std::uint64_t hamming(ExpandedIndex j1, ExpandedIndex j2) const;

private:
    void check_index(ExpandedIndex j) const;

    std::size_t word_bits_;
    std::size_t block_;
    std::uint64_t block_mask_;
    ExpandedIndex size_;
};

} // namespace hpj
