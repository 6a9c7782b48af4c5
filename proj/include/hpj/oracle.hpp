#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hpj/bitstring.hpp"
#include "hpj/fitness.hpp"

// Brute-force reference construction of the HillPathJump path, written as
// a literal transcription of the construction on character strings. It
// shares nothing with the implicit codecs except n, k and L, so agreement
// between the two is meaningful. Small n only.
namespace hpj::oracle {

// Reflected gray code built by mirroring: G(1) = 0,1; G(b) = 0G(b-1), 1G(b-1)^R.
std::vector<std::string> reflected_gray_code(std::size_t bits);
// Every word repeated `block` times per bit, with the fill-in points between
// consecutive words.
std::vector<std::string> expanded_gray_code(std::size_t bits, std::size_t block);

struct ExplicitPath {
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t length = 0;
    std::vector<BitString> points;  // z_1 .. z_L
    BitString x_star;
};

// Refuses (DomainError) when the gray code would exceed 2^10 words.
ExplicitPath enumerate_path(std::size_t n, std::size_t k, std::uint64_t length);

struct FitnessCheckReport {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::vector<std::string> first_mismatches;
    // Inputs attaining the maximum fitness, and inputs with fitness in (n, n + L].
    std::uint64_t optimum_count = 0;
    std::uint64_t path_count = 0;

    bool ok() const noexcept { return mismatches == 0; }
};

// Every x in {0,1}^n: explicit lookup versus evaluate(). n <= 16.
FitnessCheckReport exhaustive_fitness_check(std::size_t n, std::size_t k, std::uint64_t length);

struct PathCheckReport {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::vector<std::string> first_mismatches;

    bool ok() const noexcept { return mismatches == 0; }
};

// Pointwise path_point / path_rank / x_star comparison against the explicit path.
PathCheckReport compare_with_implicit(const Instance& inst);

// Exact expected one-generation path progress from z_i at rate c/n:
// sum over improving targets of (index gain) p^H (1-p)^{n-H}.
double exact_drift(const Instance& inst, double c, PathIndex i);

// H(z_i, x_star) for i = 1..L.
std::vector<std::size_t> distances_to_optimum(const ExplicitPath& path);

} // namespace hpj::oracle
