#include "hpj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "hpj/errors.hpp"

namespace hpj::oracle {

namespace {

constexpr std::size_t max_word_bits = 10;

std::size_t root_of(std::size_t n) {
    std::size_t r = 0;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    if (r * r != n) throw ConfigError("oracle: n is not a perfect square");
    return r;
}

std::string repeat(char ch, std::size_t count) { return std::string(count, ch); }

std::string to_text(const BitString& bits) { return bits.to_string(); }

std::vector<std::string> shown(const std::string& label, const BitString& lhs, const BitString& rhs) {
    return {label + ": expected " + lhs.to_string() + ", got " + rhs.to_string()};
}

} // namespace

std::vector<std::string> reflected_gray_code(std::size_t bits) {
    if (bits == 0 || bits > max_word_bits) throw DomainError("oracle: gray code size refused");
    std::vector<std::string> code{"0", "1"};
    for (std::size_t b = 2; b <= bits; ++b) {
        std::vector<std::string> next;
        next.reserve(code.size() * 2);
        for (const auto& w : code)
            next.push_back("0" + w);
        for (auto it = code.rbegin(); it != code.rend(); ++it)
            next.push_back("1" + *it);
        code = std::move(next);
    }
    return code;
}

std::vector<std::string> expanded_gray_code(std::size_t bits, std::size_t block) {
    const auto words = reflected_gray_code(bits);
    auto expand = [&](const std::string& w) {
        std::string out;
        for (char ch : w)
            out += repeat(ch, block);
        return out;
    };

    std::vector<std::string> path{expand(words.front())};
    for (std::size_t m = 1; m < words.size(); ++m) {
        const std::string& prev = words[m - 1];
        const std::string& cur = words[m];
        std::size_t changed = 0;
        while (prev[changed] == cur[changed])
            ++changed;
        const std::string base = expand(prev);
        for (std::size_t i = 1; i < block; ++i) {
            // 0 -> 1 passes through 0^{r-i} 1^i; 1 -> 0 through 0^i 1^{r-i}.
            const std::string fill = prev[changed] == '0' ? repeat('0', block - i) + repeat('1', i)
                                                          : repeat('0', i) + repeat('1', block - i);
            std::string point = base;
            point.replace(changed * block, block, fill);
            path.push_back(std::move(point));
        }
        path.push_back(expand(cur));
    }
    return path;
}

ExplicitPath enumerate_path(std::size_t n, std::size_t k, std::uint64_t length) {
    const std::size_t r = root_of(n);
    if (r < 2) throw ConfigError("oracle: n too small");
    const std::size_t word_bits = (n - r) / r;
    if (word_bits > max_word_bits) throw DomainError("oracle: n too large for explicit enumeration");
    const auto expanded = expanded_gray_code(word_bits, r);

    // Expanded element 1 is the suffix of z_r, so the tail starts at element 2.
    const std::uint64_t star = length - r + 1 + k;
    if (length <= r || star > expanded.size()) throw CapacityError("oracle: path does not fit", 0);

    ExplicitPath path;
    path.n = n;
    path.k = k;
    path.length = length;
    for (std::size_t i = 1; i <= r; ++i)
        path.points.push_back(BitString::from_string(repeat('1', i) + repeat('0', n - i)));
    for (std::uint64_t e = 2; e <= length - r + 1; ++e)
        path.points.push_back(BitString::from_string(repeat('1', r) + expanded[e - 1]));
    path.x_star = BitString::from_string(repeat('1', r) + expanded[star - 1]);
    return path;
}

FitnessCheckReport exhaustive_fitness_check(std::size_t n, std::size_t k, std::uint64_t length) {
    if (n > 16) throw DomainError("oracle: exhaustive check refused for n > 16");
    const ExplicitPath path = enumerate_path(n, k, length);
    const Instance inst = Instance::build(n, k, PathLength{length});

    std::unordered_map<std::string, std::uint64_t> index;
    for (std::size_t i = 0; i < path.points.size(); ++i)
        index.emplace(to_text(path.points[i]), i + 1);
    const std::string star = to_text(path.x_star);

    FitnessCheckReport report;
    const std::uint64_t top = static_cast<std::uint64_t>(n) + length + 1;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitString x(n);
        for (std::size_t pos = 0; pos < n; ++pos)
            x.set(pos, (v >> pos) & 1u);
        const std::string text = to_text(x);

        std::uint64_t expected;
        if (text == star)
            expected = top;
        else if (auto it = index.find(text); it != index.end())
            expected = n + it->second;
        else
            expected = static_cast<std::uint64_t>(std::count(text.begin(), text.end(), '0'));

        const Fitness got = evaluate(inst, x);
        ++report.checked;
        if (got.value != expected) {
            ++report.mismatches;
            if (report.first_mismatches.size() < 10)
                report.first_mismatches.push_back(text + ": expected " + std::to_string(expected) + ", got " +
                                                  got.to_string());
        }
        if (expected == top) ++report.optimum_count;
        if (expected > n && expected <= n + length) ++report.path_count;
    }
    return report;
}

PathCheckReport compare_with_implicit(const Instance& inst) {
    const ExplicitPath path = enumerate_path(inst.n(), inst.k(), inst.length());
    PathCheckReport report;
    auto note = [&](std::vector<std::string> lines) {
        ++report.mismatches;
        for (auto& line : lines)
            if (report.first_mismatches.size() < 10) report.first_mismatches.push_back(std::move(line));
    };
    for (std::uint64_t i = 1; i <= inst.length(); ++i) {
        ++report.checked;
        const BitString& want = path.points[i - 1];
        const BitString got = path_point(inst, i);
        if (got != want) note(shown("z_" + std::to_string(i), want, got));
        const auto rank = path_rank(inst, want);
        if (!rank || *rank != i) note({"path_rank(z_" + std::to_string(i) + ") wrong"});
    }
    ++report.checked;
    if (inst.x_star() != path.x_star) note(shown("x_star", path.x_star, inst.x_star()));
    if (path_rank(inst, path.x_star)) note({"x_star ranked as a path point"});
    return report;
}

double exact_drift(const Instance& inst, double c, PathIndex i) {
    const ExplicitPath path = enumerate_path(inst.n(), inst.k(), inst.length());
    if (i < 1 || i > path.length) throw DomainError("exact_drift: index out of range");
    const double nd = static_cast<double>(path.n);
    const double p = c / nd;
    auto probability = [&](std::size_t h) {
        return std::exp(static_cast<double>(h) * std::log(p) + (nd - static_cast<double>(h)) * std::log1p(-p));
    };

    const BitString& from = path.points[i - 1];
    double drift = 0.0;
    for (std::uint64_t j = i + 1; j <= path.length; ++j)
        drift += static_cast<double>(j - i) * probability(hamming(from, path.points[j - 1]));
    drift += static_cast<double>(path.length + path.k - i) * probability(hamming(from, path.x_star));
    return drift;
}

std::vector<std::size_t> distances_to_optimum(const ExplicitPath& path) {
    std::vector<std::size_t> out;
    out.reserve(path.points.size());
    for (const auto& z : path.points)
        out.push_back(hamming(z, path.x_star));
    return out;
}

} // namespace hpj::oracle
