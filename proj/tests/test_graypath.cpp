#include "doctest.h"

#include <set>
#include <string>

#include "hpj/errors.hpp"
#include "hpj/graypath.hpp"
#include "table1.hpp"

using hpj::BitString;
using hpj::ExpandedGrayPath;

TEST_CASE("gray_word matches the 3-bit listing") {
    const char* listing[] = {"000", "001", "011", "010", "110", "111", "101", "100"};
    for (std::uint64_t m = 0; m < 8; ++m)
        CHECK(hpj::gray_word(m, 3).to_string() == listing[m]);
    CHECK_THROWS_AS(hpj::gray_word(8, 3), hpj::DomainError);
}

TEST_CASE("gray_rank inverts gray_word for every word up to 12 bits") {
    CHECK(hpj::gray_rank(BitString::from_string("000")) == 0);
    CHECK(hpj::gray_rank(BitString::from_string("110")) == 4);
    for (std::size_t bits = 1; bits <= 12; ++bits) {
        std::set<std::string> seen;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
            const BitString w = hpj::gray_word(m, bits);
            REQUIRE(hpj::gray_rank(w) == m);
            seen.insert(w.to_string());
            if (m > 0) REQUIRE(hpj::hamming(w, hpj::gray_word(m - 1, bits)) == 1);
        }
        CHECK(seen.size() == (std::size_t{1} << bits));  // bijection
    }
}

TEST_CASE("expanded path reproduces Table 1") {
    const ExpandedGrayPath path(3, 4);
    REQUIRE(path.size() == 29);
    for (std::uint64_t j = 1; j <= 29; ++j) {
        CAPTURE(j);
        CHECK(path.point(j).to_string(4) == kTable1[j - 1]);
    }
    CHECK(path.rank(BitString::from_string("0000 0000 0111")) == 4);
    CHECK_FALSE(path.rank(BitString::from_string("0000 1100 0000")));
    CHECK_THROWS_AS(path.point(0), hpj::DomainError);
    CHECK_THROWS_AS(path.point(30), hpj::DomainError);
}

TEST_CASE("expanded_rank rejects everything off the path") {
    // Exhaustive over {0,1}^12: exactly the 29 Table 1 points are ranked.
    const ExpandedGrayPath path(3, 4);
    std::size_t ranked = 0;
    for (std::uint64_t v = 0; v < 4096; ++v) {
        BitString p(12);
        p.deposit(0, 12, v);
        if (const auto j = path.rank(p)) {
            ++ranked;
            REQUIRE(path.point(*j) == p);
        }
    }
    CHECK(ranked == 29);
}

TEST_CASE("round trip, injectivity, adjacency and local distance") {
    for (std::size_t r : {4, 5, 6}) {
        CAPTURE(r);
        const ExpandedGrayPath path(r - 1, r);
        std::set<std::string> seen;
        for (std::uint64_t j = 1; j <= path.size(); ++j) {
            const BitString p = path.point(j);
            REQUIRE(path.rank(p) == j);
            seen.insert(p.to_string());
            if (j < path.size()) REQUIRE(path.hamming(j, j + 1) == 1);
            // Exact distance d holds through d = r + 1; the codec only
            // shortcuts for d <= r, so compare against the bit count there.
            for (std::uint64_t d = 0; d <= r + 1 && j + d <= path.size(); ++d) {
                const auto bitwise = hpj::hamming(p, path.point(j + d));
                REQUIRE(bitwise == d);
                REQUIRE(path.hamming(j, j + d) == bitwise);
            }
        }
        CHECK(seen.size() == path.size());
    }
}

TEST_CASE("expanded_hamming") {
    const ExpandedGrayPath path(3, 4);
    CHECK(path.hamming(7, 7) == 0);
    CHECK(path.hamming(5, 9) == 4);
    CHECK(path.hamming(1, 29) == 4);  // 0000 0000 0000 vs 1111 0000 0000
    for (std::uint64_t a = 1; a <= 29; ++a)
        for (std::uint64_t b = 1; b <= 29; ++b)
            REQUIRE(path.hamming(a, b) == hpj::hamming(path.point(a), path.point(b)));
    CHECK_THROWS_AS(path.hamming(0, 3), hpj::DomainError);
}

TEST_CASE("wide blocks use the multi-word extract path") {
    const ExpandedGrayPath path(9, 40);
    for (std::uint64_t j : std::initializer_list<std::uint64_t>{1, 2, 39, 40, 41, 12345, path.size()}) {
        CAPTURE(j);
        REQUIRE(path.rank(path.point(j)) == j);
    }
}
