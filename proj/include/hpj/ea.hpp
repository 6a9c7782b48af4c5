#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hpj/bitstring.hpp"
#include "hpj/fitness.hpp"
#include "hpj/rng.hpp"

namespace hpj {

// Per-bit flip probability p in (0, 1).
class MutationRate {
public:
    static MutationRate per_bit(double p);
    // p = c / n.
    static MutationRate from_c(double c, std::size_t n);

    double p() const noexcept { return p_; }
    double c(std::size_t n) const noexcept { return p_ * static_cast<double>(n); }

private:
    explicit MutationRate(double p) : p_(p) {}
    double p_;
};

// Standard bit mutation. The flip count is drawn from Binomial(n, p) by
// inversion and that many distinct positions are chosen uniformly, which
// has the same law as n independent coin flips.
class BitMutation {
public:
    BitMutation(std::size_t n, MutationRate rate);

    std::size_t flip_count(Rng& rng) const noexcept;
    // Positions to flip; valid until the next call.
    std::span<const std::size_t> sample(Rng& rng);

private:
    std::vector<double> cdf_;
    std::vector<std::size_t> order_;
};

enum class StopAt : std::uint8_t {
    optimum,   // run until x_star
    path_end,  // run until the first of x_plus, x_star
};

struct RunOptions {
    // Caps the number of generations; unlimited when empty.
    std::optional<std::uint64_t> budget;
    StopAt stop = StopAt::optimum;
    // Polled every few thousand generations; a cancelled run is truncated.
    const std::atomic<bool>* cancel = nullptr;
    // Called with the parent's fitness after every generation.
    std::function<void(std::uint64_t step, Fitness parent)> on_step;
};

// Trace of one (1+1) EA run. Steps count generations; step 0 is the
// initial individual.
struct RunRecord {
    std::uint64_t seed = 0;
    std::uint64_t steps_total = 0;
    // First step whose individual lies on the path or is the optimum.
    std::optional<std::uint64_t> step_path_entry;
    std::optional<Fitness> fitness_at_entry;
    std::optional<std::uint64_t> step_xplus;
    std::optional<std::uint64_t> step_xstar;
    // x_star reached without visiting x_plus.
    bool early_jump = false;
    // step_xstar - step_xplus.
    std::optional<std::uint64_t> jump_wait;
    bool truncated = false;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

// Starts from a uniformly random bitstring.
RunRecord run(const Instance& inst, MutationRate rate, std::uint64_t seed,
              std::optional<std::uint64_t> budget = std::nullopt);
RunRecord run(const Instance& inst, MutationRate rate, std::uint64_t seed, const RunOptions& options);

RunRecord run_from(const Instance& inst, MutationRate rate, std::uint64_t seed, const BitString& start,
                   std::optional<std::uint64_t> budget = std::nullopt);
RunRecord run_from(const Instance& inst, MutationRate rate, std::uint64_t seed, const BitString& start,
                   const RunOptions& options);

// One generation from path point z_state: the index gained (the optimum
// counts as position L + k). Elitism makes progress non-negative.
struct DriftSample {
    PathIndex state;
    std::uint64_t progress;
};

// Monte-Carlo mean one-generation progress from z_i.
double estimate_drift(const Instance& inst, MutationRate rate, PathIndex i, std::uint64_t trials,
                      std::uint64_t seed);

} // namespace hpj
