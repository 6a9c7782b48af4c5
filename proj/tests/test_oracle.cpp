#include "doctest.h"

#include <cmath>

#include "hpj/ea.hpp"
#include "hpj/errors.hpp"
#include "hpj/oracle.hpp"
#include "hpj/theory.hpp"
#include "table1.hpp"

namespace oracle = hpj::oracle;
using hpj::BitString;
using hpj::Instance;
using hpj::PathLength;

TEST_CASE("literal expansion reproduces Table 1") {
    const auto expanded = oracle::expanded_gray_code(3, 4);
    REQUIRE(expanded.size() == 29);
    for (std::size_t i = 0; i < 29; ++i)
        CHECK(BitString::from_string(expanded[i]) == BitString::from_string(kTable1[i]));
}

TEST_CASE("explicit path layout") {
    const auto path = oracle::enumerate_path(16, 4, 28);
    REQUIRE(path.points.size() == 28);
    CHECK(path.points[0].to_string(4) == "1000 0000 0000 0000");
    CHECK(path.points[1].to_string(4) == "1100 0000 0000 0000");
    CHECK(path.points[2].to_string(4) == "1110 0000 0000 0000");
    CHECK(path.points[3].to_string(4) == "1111 0000 0000 0000");
    // z_{r+j} carries Table 1 row j + 1.
    for (std::size_t i = 4; i < 28; ++i)
        CHECK(path.points[i].to_string(4).substr(5) == kTable1[i - 3]);
    for (std::size_t i = 1; i < path.points.size(); ++i)
        REQUIRE(hpj::hamming(path.points[i - 1], path.points[i]) == 1);
    CHECK_THROWS_AS(oracle::enumerate_path(144, 4, 20), hpj::DomainError);
}

TEST_CASE("implicit codecs agree with explicit enumeration") {
    for (std::size_t n : {16, 25, 36}) {
        for (std::size_t k : {4, 5}) {
            const auto probe = Instance::build(n, k, PathLength{12});
            for (std::uint64_t L : {std::uint64_t{12}, probe.max_path_length() / 2, probe.max_path_length()}) {
                const auto inst = Instance::build(n, k, PathLength{L});
                const auto report = oracle::compare_with_implicit(inst);
                CAPTURE(n);
                CAPTURE(L);
                REQUIRE(report.ok());
                CHECK(report.checked == L + 1);
            }
        }
    }
}

TEST_CASE("exhaustive fitness check at n = 16") {
    const auto report = oracle::exhaustive_fitness_check(16, 4, 20);
    CHECK(report.checked == 65536);
    CHECK(report.mismatches == 0);
    CHECK(report.optimum_count == 1);
    CHECK(report.path_count == 20);
    CHECK_THROWS_AS(oracle::exhaustive_fitness_check(25, 4, 20), hpj::DomainError);
}

TEST_CASE("jump geometry on the explicit path") {
    for (std::size_t n : {16, 25, 36, 49}) {
        const std::size_t r = static_cast<std::size_t>(std::sqrt(n));
        for (std::size_t k : {4, 5}) {
            const auto probe = Instance::build(n, k, PathLength{r + 2});
            for (std::uint64_t L = r + 2; L <= probe.max_path_length(); ++L) {
                const auto path = oracle::enumerate_path(n, k, L);
                const auto dist = oracle::distances_to_optimum(path);
                CAPTURE(n);
                CAPTURE(k);
                CAPTURE(L);
                REQUIRE(dist[L - 1] == k);
                if (k <= r) REQUIRE(dist[L - 2] == k + 1);
                for (std::uint64_t i = 1; i + r <= L; ++i)
                    REQUIRE(dist[i - 1] >= r);
            }
        }
    }
}

TEST_CASE("exact drift") {
    const auto inst = Instance::build(100, 4, PathLength{2000});
    const double c = 1.0;
    const double p = c / 100;
    const double single = p * std::pow(1 - p, 99);
    const double exact = oracle::exact_drift(inst, c, 1000);
    CHECK(exact / single >= 1.0);
    CHECK(exact / single <= 1.03);

    // Monte-Carlo agreement: progress is 0 or small, variance about the mean.
    const auto rate = hpj::MutationRate::from_c(c, 100);
    const double mc = hpj::estimate_drift(inst, rate, 1000, 400000, 17);
    CHECK(std::abs(mc - exact) <= 4 * std::sqrt(1.2 * exact / 400000));

    const auto small = Instance::build(16, 4, PathLength{20});
    CHECK(oracle::exact_drift(small, 2.0, 20) ==
          doctest::Approx(4 * hpj::theory::jump_success_probability(16, 4, 2.0)).epsilon(1e-12));
}
