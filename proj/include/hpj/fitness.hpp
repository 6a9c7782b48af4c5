#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "hpj/bitstring.hpp"
#include "hpj/graypath.hpp"

namespace hpj {

// 1-based position on the fitness path, 1 <= i <= L.
using PathIndex = std::uint64_t;

// Fitness values reach n + L + 1, so they are carried in 128 bits.
struct Fitness {
    unsigned __int128 value = 0;

    friend constexpr auto operator<=>(const Fitness&, const Fitness&) = default;
    std::string to_string() const;
    static Fitness parse(const std::string& text);
};

// Path length requested as a coefficient a (L = floor(a n^{k-1})) or directly.
struct PathCoefficient {
    double a;
};
struct PathLength {
    std::uint64_t length;
};
using PathSpec = std::variant<PathCoefficient, PathLength>;

// Where a bitstring sits relative to the path.
struct Location {
    enum class Kind : std::uint8_t { off_path, on_path, optimum };
    Kind kind = Kind::off_path;
    // Path index for on_path, L + k for the optimum, 0 otherwise.
    std::uint64_t position = 0;
};

// One HillPathJump instance: ZeroMax hill, path z_1..z_L, then a k-bit jump
// from x_plus = z_L to the optimum x_star. Immutable after construction.
//
// z_i = 1^i 0^{n-i} for i <= r, and 1^r followed by expanded point
// i - r + 1 for i > r. x_star is 1^r followed by expanded point L - r + 1 + k.
class Instance {
public:
    // n must be a perfect square, k >= 4, k <= sqrt(n) + 1 and
    // sqrt(n) + 2 <= L <= max_path_length(). Throws ConfigError or
    // CapacityError.
    static Instance build(std::size_t n, std::size_t k, PathSpec spec);

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t root() const noexcept { return r_; }
    std::size_t word_bits() const noexcept { return path_.word_bits(); }
    std::uint64_t length() const noexcept { return length_; }
    std::optional<double> coefficient() const noexcept { return coefficient_; }
    // Coefficient implied by L, L / n^{k-1}.
    double effective_coefficient() const;
    const ExpandedGrayPath& expanded() const noexcept { return path_; }
    std::uint64_t max_path_length() const noexcept;
    ExpandedIndex star_expanded_index() const noexcept { return length_ - r_ + 1 + k_; }

    const BitString& x_plus() const noexcept { return x_plus_; }
    const BitString& x_star() const noexcept { return x_star_; }

    Fitness optimum_fitness() const noexcept;

private:
    Instance(std::size_t n, std::size_t k, std::uint64_t length, std::optional<double> coefficient);

    std::size_t n_;
    std::size_t k_;
    std::size_t r_;
    std::uint64_t length_;
    std::optional<double> coefficient_;
    ExpandedGrayPath path_;
    BitString x_plus_;
    BitString x_star_;
};

BitString path_point(const Instance& inst, PathIndex i);
std::optional<PathIndex> path_rank(const Instance& inst, const BitString& x);
// O(n), no allocation. Assumes x.size() == inst.n().
Location locate(const Instance& inst, const BitString& x) noexcept;
Fitness fitness_of(const Instance& inst, const BitString& x, Location where) noexcept;
Fitness evaluate(const Instance& inst, const BitString& x);

// {n, k, a, L, r, N, x_plus, x_star} with bitstrings as hex.
nlohmann::json to_json(const Instance& inst);
// Rebuilds from n, k, L (and a if present) and checks any derived fields.
Instance instance_from_json(const nlohmann::json& doc);

} // namespace hpj
