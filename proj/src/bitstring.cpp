#include "hpj/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace hpj {

BitString::BitString(std::size_t size) : size_(size), words_((size + 63) / 64 + 1, 0) {}

BitString BitString::from_string(std::string_view text) {
    std::size_t size = 0;
    for (char ch : text) {
        if (ch == '0' || ch == '1')
            ++size;
        else if (ch != ' ' && ch != '_')
            throw std::invalid_argument("bit string: unexpected character '" + std::string(1, ch) + "'");
    }
    BitString bits(size);
    std::size_t pos = 0;
    for (char ch : text) {
        if (ch == '1') bits.set(pos);
        if (ch == '0' || ch == '1') ++pos;
    }
    return bits;
}

BitString BitString::from_hex(std::string_view hex, std::size_t size) {
    if (hex.size() != (size + 3) / 4)
        throw std::invalid_argument("bit string: hex length does not match bit count");
    BitString bits(size);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const char ch = hex[i];
        int nibble;
        if (ch >= '0' && ch <= '9')
            nibble = ch - '0';
        else if (ch >= 'a' && ch <= 'f')
            nibble = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F')
            nibble = ch - 'A' + 10;
        else
            throw std::invalid_argument("bit string: bad hex digit");
        for (int b = 0; b < 4; ++b) {
            const std::size_t pos = 4 * i + b;
            const bool bit = (nibble >> (3 - b)) & 1;
            if (pos < size)
                bits.set(pos, bit);
            else if (bit)
                throw std::invalid_argument("bit string: nonzero hex padding");
        }
    }
    return bits;
}

void BitString::set_range(std::size_t first, std::size_t count) noexcept {
    while (count > 0) {
        const std::size_t off = first & 63;
        const std::size_t take = std::min<std::size_t>(count, 64 - off);
        const std::uint64_t mask = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
        words_[first >> 6] |= mask << off;
        first += take;
        count -= take;
    }
}

void BitString::deposit(std::size_t pos, std::size_t len, std::uint64_t value) noexcept {
    for (std::size_t i = 0; i < len; ++i)
        set(pos + i, (value >> i) & 1u);
}

std::size_t BitString::count() const noexcept {
    std::size_t total = 0;
    for (std::uint64_t w : words_)
        total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::string BitString::to_string(std::size_t group) const {
    std::string out;
    out.reserve(size_ + (group ? size_ / group : 0));
    for (std::size_t i = 0; i < size_; ++i) {
        if (group && i && i % group == 0) out.push_back(' ');
        out.push_back(test(i) ? '1' : '0');
    }
    return out;
}

std::string BitString::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < size_; i += 4) {
        int nibble = 0;
        for (std::size_t b = 0; b < 4; ++b)
            nibble = (nibble << 1) | (i + b < size_ && test(i + b) ? 1 : 0);
        out.push_back(digits[nibble]);
    }
    return out;
}

std::size_t hamming(const BitString& lhs, const BitString& rhs) {
    if (lhs.size() != rhs.size()) throw std::invalid_argument("hamming: length mismatch");
    const auto a = lhs.words();
    const auto b = rhs.words();
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        total += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
    return total;
}

} // namespace hpj
