#include "hpj/graypath.hpp"

#include <bit>
#include <string>

#include "hpj/errors.hpp"

namespace hpj {

namespace {

constexpr std::uint64_t low_mask(std::size_t count) noexcept {
    return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

} // namespace

BitString gray_word(GrayWordIndex m, std::size_t bits) {
    if (bits == 0 || bits > 63 || m >= (std::uint64_t{1} << bits))
        throw DomainError("gray_word: index " + std::to_string(m) + " out of range for " +
                          std::to_string(bits) + " bits");
    const std::uint64_t g = gray_encode(m);
    BitString word(bits);
    for (std::size_t p = 0; p < bits; ++p)
        word.set(p, (g >> (bits - 1 - p)) & 1u);
    return word;
}

GrayWordIndex gray_rank(const BitString& word) {
    const std::size_t bits = word.size();
    if (bits == 0 || bits > 63) throw DomainError("gray_rank: word length must be in [1, 63]");
    std::uint64_t g = 0;
    for (std::size_t p = 0; p < bits; ++p)
        g = (g << 1) | (word.test(p) ? 1u : 0u);
    return gray_decode(g);
}

ExpandedGrayPath::ExpandedGrayPath(std::size_t word_bits, std::size_t block)
    : word_bits_(word_bits), block_(block), block_mask_(low_mask(block)) {
    if (word_bits == 0 || word_bits > 63) throw ConfigError("expanded path: word bits must be in [1, 63]");
    if (block == 0 || block > 64) throw ConfigError("expanded path: block size must be in [1, 64]");
    const unsigned __int128 m =
        static_cast<unsigned __int128>(block) * ((std::uint64_t{1} << word_bits) - 1) + 1;
    if (m > ~std::uint64_t{0}) throw ConfigError("expanded path: length exceeds 64-bit index range");
    size_ = static_cast<ExpandedIndex>(m);
}

void ExpandedGrayPath::check_index(ExpandedIndex j) const {
    if (j < 1 || j > size_)
        throw DomainError("expanded path: index " + std::to_string(j) + " outside [1, " +
                          std::to_string(size_) + "]");
}

BitString ExpandedGrayPath::point(ExpandedIndex j) const {
    BitString out(bits());
    write_point(j, out, 0);
    return out;
}

void ExpandedGrayPath::write_point(ExpandedIndex j, BitString& out, std::size_t offset) const {
    check_index(j);
    const std::uint64_t q = (j - 1) / block_;
    const std::uint64_t t = (j - 1) % block_;
    const std::uint64_t g = gray_encode(q);
    for (std::size_t b = 0; b < word_bits_; ++b)
        if ((g >> (word_bits_ - 1 - b)) & 1u) out.set_range(offset + b * block_, block_);
    if (t == 0) return;

    const auto bit = static_cast<std::size_t>(std::countr_zero(q + 1));
    const std::size_t first = offset + (word_bits_ - 1 - bit) * block_;
    // Both fill-in directions give 0^z 1^{r-z}: z = r - t going up, z = t going down.
    const bool rising = ((g >> bit) & 1u) == 0;
    const std::size_t zeros = rising ? block_ - t : t;
    out.deposit(first, block_, block_mask_ & ~low_mask(zeros));
}

std::optional<ExpandedIndex> ExpandedGrayPath::rank(const BitString& p) const {
    if (p.size() != bits()) return std::nullopt;
    return rank(p, 0);
}

std::optional<ExpandedIndex> ExpandedGrayPath::rank(const BitString& p, std::size_t offset) const noexcept {
    std::uint64_t word = 0;
    std::size_t mixed_bit = 64;
    std::size_t mixed_zeros = 0;
    for (std::size_t b = 0; b < word_bits_; ++b) {
        const std::uint64_t v = p.extract(offset + b * block_, block_);
        const std::size_t bit = word_bits_ - 1 - b;
        if (v == 0) continue;
        if (v == block_mask_) {
            word |= std::uint64_t{1} << bit;
            continue;
        }
        if (mixed_bit != 64) return std::nullopt;
        const auto zeros = static_cast<std::size_t>(std::countr_zero(v));
        if (v != (block_mask_ & ~low_mask(zeros))) return std::nullopt;
        mixed_bit = bit;
        mixed_zeros = zeros;
    }
    if (mixed_bit == 64) return gray_decode(word) * block_ + 1;

    const std::uint64_t m0 = gray_decode(word);
    const std::uint64_t m1 = gray_decode(word | (std::uint64_t{1} << mixed_bit));
    if (m1 == m0 + 1) return m0 * block_ + 1 + (block_ - mixed_zeros);
    if (m0 == m1 + 1) return m1 * block_ + 1 + mixed_zeros;
    return std::nullopt;
}

std::uint64_t ExpandedGrayPath::hamming(ExpandedIndex j1, ExpandedIndex j2) const {
    check_index(j1);
    check_index(j2);
    const std::uint64_t d = j1 > j2 ? j1 - j2 : j2 - j1;
    // Spans at most two consecutive transitions, which touch distinct blocks.
    if (d <= block_) return d;
    return hpj::hamming(point(j1), point(j2));
}

} // namespace hpj
