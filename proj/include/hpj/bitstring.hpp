#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hpj {

// Fixed-length bit vector. Position 0 is the leftmost character of the
// textual form, so "1100" has bits 0 and 1 set.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t size);

    // Accepts '0'/'1'; spaces and underscores are ignored.
    static BitString from_string(std::string_view text);
    static BitString from_hex(std::string_view hex, std::size_t size);

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t pos) const noexcept {
        return (words_[pos >> 6] >> (pos & 63)) & 1u;
    }
    bool operator[](std::size_t pos) const noexcept { return test(pos); }

    void set(std::size_t pos, bool value = true) noexcept {
        const std::uint64_t bit = std::uint64_t{1} << (pos & 63);
        if (value)
            words_[pos >> 6] |= bit;
        else
            words_[pos >> 6] &= ~bit;
    }
    void flip(std::size_t pos) noexcept { words_[pos >> 6] ^= std::uint64_t{1} << (pos & 63); }

    // Sets positions [first, first + count).
    void set_range(std::size_t first, std::size_t count) noexcept;

    std::size_t count() const noexcept;

    // Bits [pos, pos + len) packed so that result bit i is position pos + i.
    // len <= 64.
    std::uint64_t extract(std::size_t pos, std::size_t len) const noexcept {
        const std::size_t w = pos >> 6;
        const std::size_t off = pos & 63;
        std::uint64_t v = words_[w] >> off;
        if (off + len > 64) v |= words_[w + 1] << (64 - off);
        return len == 64 ? v : v & ((std::uint64_t{1} << len) - 1);
    }
    void deposit(std::size_t pos, std::size_t len, std::uint64_t value) noexcept;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    std::string to_string(std::size_t group = 0) const;
    // Nibbles left to right; position 4i is the high bit of nibble i. The
    // final nibble is zero padded on the right.
    std::string to_hex() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

std::size_t hamming(const BitString& lhs, const BitString& rhs);

} // namespace hpj
