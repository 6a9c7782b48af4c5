#include "doctest.h"

#include <cmath>

#include "hpj/theory.hpp"

namespace th = hpj::theory;

namespace {

// Independent oracle: plain bisection on the expanded polynomial, no polish.
double bisect_q(double a, int k) {
    double lo = 1.0, hi = k;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double value = a * std::pow(mid, k) - a * std::pow(mid, k - 1) + mid - k;
        (value < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("g") {
    CHECK(th::g({1.0, 4}, 1.0) == doctest::Approx(5.43656365691809).epsilon(1e-12));
    CHECK(th::g({0.25, 4}, 2.0) == doctest::Approx(1.38544801854950).epsilon(1e-12));
    CHECK_THROWS_AS(th::g({1.0, 4}, 0.0), hpj::DomainError);
    const th::ModelParams p{0.25, 4};
    const double at_min = th::g(p, th::root_Z(p));
    CHECK(th::g(p, 1e-6) > 1e6 * at_min);
    CHECK(th::g(p, 50.0) > 1e6 * at_min);
}

TEST_CASE("q and its two groupings") {
    CHECK(th::q({1.0, 4}, 1.0) == doctest::Approx(-3.0));
    CHECK(th::q({0.25, 4}, 2.0) == doctest::Approx(0.0));
    CHECK(th::q({1.0, 4}, 1.6) == doctest::Approx(0.0576).epsilon(1e-10));
    for (double x = 0.1; x < 6.0; x += 0.37)
        CHECK(th::q({0.7, 5}, x) == doctest::Approx(th::q_factored({0.7, 5}, x)).epsilon(1e-12));
    CHECK_THROWS_AS(th::q({1.0, 4}, -1.0), hpj::DomainError);
    CHECK_THROWS_AS(th::ModelParams(0.0, 4), hpj::DomainError);
    CHECK_THROWS_AS(th::ModelParams(1.0, 1), hpj::DomainError);
}

TEST_CASE("x^{k+1} e^{-x} g'(x) = q(x) by finite differences") {
    for (double a : {0.01, 0.25, 1.0, 10.0}) {
        for (int k : {2, 4, 6}) {
            const th::ModelParams p{a, k};
            for (int i = 0; i < 200; ++i) {
                const double x = 1.0 + (k - 1.0) * (i + 0.5) / 200.0;
                const double h = 1e-6 * x;
                const double fd = (th::g(p, x + h) - th::g(p, x - h)) / (2 * h);
                const double lhs = std::pow(x, k + 1) * std::exp(-x) * fd;
                const double rhs = th::q(p, x);
                if (std::abs(rhs) < 1e-3) continue;  // relative error meaningless at the root
                REQUIRE(std::abs(lhs - rhs) <= 1e-4 * std::abs(rhs));
                REQUIRE(th::g_derivative(p, x) == doctest::Approx(fd).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("q has one sign change on (0, inf)") {
    for (double a : {1e-4, 0.01, 0.3, 2.0, 1e3}) {
        for (int k : {2, 3, 4, 7}) {
            const th::ModelParams p{a, k};
            int changes = 0;
            double prev = th::q(p, 1e-3);
            for (double x = 1e-3; x <= 1.0; x += 1e-3)
                REQUIRE(th::q(p, x) < 0.0);
            for (double x = 2e-3; x < 2.0 * k; x += 1e-3) {
                const double v = th::q(p, x);
                if ((v > 0) != (prev > 0)) ++changes;
                if (x >= 1.0) REQUIRE(th::q_derivative(p, x) > 0.0);
                prev = v;
            }
            REQUIRE(changes == 1);
        }
    }
}

TEST_CASE("root_Z") {
    CHECK(std::abs(th::root_Z({0.25, 4}) - 2.0) <= 1e-8);
    const double z1 = th::root_Z({1.0, 4});
    CHECK(std::abs(z1 - bisect_q(1.0, 4)) <= 1e-8);
    CHECK(z1 == doctest::Approx(1.5940255796386685).epsilon(1e-12));
    const double big = th::root_Z({1e6, 4});
    CHECK(big > 1.0);
    CHECK(big < 1.01);
    CHECK(std::abs(th::q({1.0, 4}, z1)) < 1e-12);
    // g' changes sign at the root.
    CHECK(th::g_derivative({1.0, 4}, z1 - 1e-6) < 0.0);
    CHECK(th::g_derivative({1.0, 4}, z1 + 1e-6) > 0.0);
    CHECK_THROWS_AS(th::root_Z({1.0, 4}, 0.0), hpj::DomainError);
}

TEST_CASE("root_Z agrees with the g minimizer") {
    for (double a : {1e-3, 0.05, 0.25, 1.0, 40.0}) {
        const th::ModelParams p{a, 4};
        CHECK(th::argmin_g(p) == doctest::Approx(th::root_Z(p)).epsilon(1e-10));
    }
}

TEST_CASE("Z is strictly decreasing in a") {
    double prev = 5.0;
    for (double la = -4.0; la <= 4.0; la += 0.1) {
        const double z = th::root_Z({std::pow(10.0, la), 4});
        REQUIRE(z < prev);
        REQUIRE(z > 1.0);
        REQUIRE(z < 4.0);
        prev = z;
    }
}

TEST_CASE("calibrate") {
    CHECK(th::calibrate(2.0, 4) == doctest::Approx(0.25));
    CHECK(th::q({th::calibrate(2.0, 4), 4}, 2.0) == doctest::Approx(0.0));
    CHECK(th::calibrate(3.999, 4) < 1e-3);
    CHECK_THROWS_AS(th::calibrate(1.0, 4), hpj::DomainError);
    CHECK_THROWS_AS(th::calibrate(4.0, 4), hpj::DomainError);
    for (int i = 0; i < 100; ++i) {
        const double c = 1.01 + (3.99 - 1.01) * i / 99.0;
        REQUIRE(std::abs(th::root_Z({th::calibrate(c, 4), 4}) - c) <= 1e-8);
    }
    for (int k : {4, 5, 6})
        for (double c = 1.01; c < k - 0.005; c += 0.01)
            REQUIRE(std::abs(th::root_Z({th::calibrate(c, k), k}) - c) <= 1e-8);
}

TEST_CASE("predicted runtime") {
    const th::ModelParams p{0.25, 4};
    CHECK(th::predicted_runtime(p, 10.0, 2.0) == doctest::Approx(1.38544801854950e4).epsilon(1e-12));
    CHECK(th::predicted_runtime_for_length(20, 16, 4, 2.0) == doctest::Approx(31447.8227570488).epsilon(1e-12));
    // Both forms agree for a = L / n^{k-1}.
    CHECK(th::predicted_runtime({150.0 / 46656.0, 4}, 36, 2.5) ==
          doctest::Approx(th::predicted_runtime_for_length(150, 36, 4, 2.5)).epsilon(1e-12));
    // Grid minimum sits at root_Z.
    const th::ModelParams q{150.0 / 46656.0, 4};
    const double z = th::root_Z(q);
    double best_c = 0, best = INFINITY;
    for (double c = 1.0; c <= 4.0; c += 1e-4) {
        const double v = th::predicted_runtime(q, 36, c);
        if (v < best) best = v, best_c = c;
    }
    CHECK(std::abs(best_c - z) < 2e-4);
}

TEST_CASE("drift prediction") {
    CHECK(th::drift_prediction(100, 1.0) == doctest::Approx(std::exp(-1.0) / 100));
    CHECK(th::drift_prediction(49, 2.0) == doctest::Approx(0.00552388911169848).epsilon(1e-12));
    for (double c = 0.05; c < 3.0; c += 0.05)
        if (std::abs(c - 1.0) > 1e-9) CHECK(th::drift_prediction(100, c) < th::drift_prediction(100, 1.0));
    CHECK_THROWS_AS(th::drift_prediction(0.5, 1.0), hpj::DomainError);
}

TEST_CASE("jump success probability") {
    CHECK(th::jump_success_probability(16, 4, 2.0) == doctest::Approx(4.91741303711990e-5).epsilon(1e-12));
    const double exact = th::jump_success_probability(10000, 4, 2.0);
    const double limit = std::pow(2.0, 4) * std::exp(-2.0) / std::pow(1e4, 4);
    CHECK(exact / limit >= 0.9);
    CHECK(exact / limit <= 1.1);
    CHECK_THROWS_AS(th::jump_success_probability(16, 4, 16.0), hpj::DomainError);
}

TEST_CASE("LeadingOnes constant") {
    const double c = th::leadingones_constant();
    CHECK(c >= 1.5931);
    CHECK(c <= 1.5941);
    CHECK(std::abs((c - 2.0) * std::exp(c) + 2.0) <= 1e-8);
    CHECK(c == doctest::Approx(1.59362426004004).epsilon(1e-12));
    auto f = [](double x) { return (std::exp(x) - 1.0) / (x * x); };
    CHECK(f(1.0) > f(c));
    CHECK(f(2.5) > f(c));
}

TEST_CASE("analyze") {
    const auto r = th::analyze({0.25, 4});
    CHECK(r.c_star == doctest::Approx(2.0));
    CHECK(r.g_at_min == doctest::Approx(1.38544801854950));
    CHECK(r.predicted_runtime(10) == doctest::Approx(13854.4801854950));
}
