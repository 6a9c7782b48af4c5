#include "hpj/ea.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hpj/errors.hpp"

namespace hpj {

MutationRate MutationRate::per_bit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("mutation rate must lie in (0, 1), got " + std::to_string(p));
    return MutationRate(p);
}

MutationRate MutationRate::from_c(double c, std::size_t n) {
    if (n == 0) throw DomainError("mutation rate: n must be positive");
    return per_bit(c / static_cast<double>(n));
}

BitMutation::BitMutation(std::size_t n, MutationRate rate) : cdf_(n + 1), order_(n) {
    const double p = rate.p();
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const double log_nf = std::lgamma(static_cast<double>(n) + 1.0);
    double total = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const auto kd = static_cast<double>(k);
        const auto rest = static_cast<double>(n - k);
        total += std::exp(log_nf - std::lgamma(kd + 1.0) - std::lgamma(rest + 1.0) + kd * log_p + rest * log_q);
        cdf_[k] = total;
    }
    cdf_[n] = 1.0;
    std::iota(order_.begin(), order_.end(), std::size_t{0});
}

std::size_t BitMutation::flip_count(Rng& rng) const noexcept {
    const double u = rng.uniform();
    std::size_t k = 0;
    while (u >= cdf_[k])
        ++k;
    return k;
}

std::span<const std::size_t> BitMutation::sample(Rng& rng) {
    const std::size_t flips = flip_count(rng);
    const std::size_t n = order_.size();
    // Partial Fisher-Yates. The starting arrangement does not matter for
    // the law of the selected set.
    for (std::size_t i = 0; i < flips; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(order_[i], order_[j]);
    }
    return {order_.data(), flips};
}

namespace {

BitString random_bits(std::size_t n, Rng& rng) {
    BitString x(n);
    for (std::size_t pos = 0; pos < n; pos += 64) {
        const std::size_t len = std::min<std::size_t>(64, n - pos);
        const std::uint64_t word = rng.next();
        x.deposit(pos, len, word);
    }
    return x;
}

RunRecord evolve(const Instance& inst, MutationRate rate, std::uint64_t seed, Rng& rng, BitString x,
                 const RunOptions& options) {
    if (x.size() != inst.n())
        throw DomainError("run: start has length " + std::to_string(x.size()) + ", expected " +
                          std::to_string(inst.n()));
    BitMutation mutation(inst.n(), rate);
    const std::uint64_t budget = options.budget.value_or(~std::uint64_t{0});
    const std::uint64_t path_end = inst.length();

    RunRecord rec;
    rec.seed = seed;
    Location where = locate(inst, x);
    Fitness parent = fitness_of(inst, x, where);
    std::uint64_t step = 0;

    auto record = [&] {
        if (where.kind == Location::Kind::off_path) return;
        if (!rec.step_path_entry) {
            rec.step_path_entry = step;
            rec.fitness_at_entry = parent;
        }
        if (where.kind == Location::Kind::optimum)
            rec.step_xstar = step;
        else if (where.position == path_end && !rec.step_xplus)
            rec.step_xplus = step;
    };
    auto finished = [&] {
        return rec.step_xstar.has_value() || (options.stop == StopAt::path_end && rec.step_xplus.has_value());
    };

    record();
    while (!finished()) {
        if (step >= budget) {
            rec.truncated = true;
            break;
        }
        if (options.cancel && (step & 0xfff) == 0 && options.cancel->load(std::memory_order_relaxed)) {
            rec.truncated = true;
            break;
        }
        ++step;
        const auto flips = mutation.sample(rng);
        if (!flips.empty()) {
            for (std::size_t pos : flips)
                x.flip(pos);
            const Location child_where = locate(inst, x);
            const Fitness child = fitness_of(inst, x, child_where);
            if (child >= parent) {
                where = child_where;
                parent = child;
                record();
            } else {
                for (std::size_t pos : flips)
                    x.flip(pos);
            }
        }
        if (options.on_step) options.on_step(step, parent);
    }

    rec.steps_total = step;
    rec.early_jump = rec.step_xstar.has_value() && !rec.step_xplus.has_value();
    if (rec.step_xstar && rec.step_xplus) rec.jump_wait = *rec.step_xstar - *rec.step_xplus;
    return rec;
}

} // namespace

RunRecord run(const Instance& inst, MutationRate rate, std::uint64_t seed, std::optional<std::uint64_t> budget) {
    RunOptions options;
    options.budget = budget;
    return run(inst, rate, seed, options);
}

RunRecord run(const Instance& inst, MutationRate rate, std::uint64_t seed, const RunOptions& options) {
    Rng rng(seed);
    BitString start = random_bits(inst.n(), rng);
    return evolve(inst, rate, seed, rng, std::move(start), options);
}

RunRecord run_from(const Instance& inst, MutationRate rate, std::uint64_t seed, const BitString& start,
                   std::optional<std::uint64_t> budget) {
    RunOptions options;
    options.budget = budget;
    return run_from(inst, rate, seed, start, options);
}

RunRecord run_from(const Instance& inst, MutationRate rate, std::uint64_t seed, const BitString& start,
                   const RunOptions& options) {
    Rng rng(seed);
    return evolve(inst, rate, seed, rng, start, options);
}

double estimate_drift(const Instance& inst, MutationRate rate, PathIndex i, std::uint64_t trials,
                      std::uint64_t seed) {
    if (trials == 0) throw DomainError("estimate_drift: trials must be >= 1");
    BitString x = path_point(inst, i);
    Rng rng(seed);
    BitMutation mutation(inst.n(), rate);

    auto one_step = [&]() -> DriftSample {
        const auto flips = mutation.sample(rng);
        if (flips.empty()) return {i, 0};
        for (std::size_t pos : flips)
            x.flip(pos);
        const Location where = locate(inst, x);
        for (std::size_t pos : flips)
            x.flip(pos);
        if (where.kind == Location::Kind::off_path || where.position < i) return {i, 0};
        return {i, where.position - i};
    };

    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < trials; ++t)
        total += one_step().progress;
    return static_cast<double>(total) / static_cast<double>(trials);
}

} // namespace hpj
