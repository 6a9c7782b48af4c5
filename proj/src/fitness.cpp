#include "hpj/fitness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hpj/errors.hpp"

namespace hpj {

std::string Fitness::to_string() const {
    if (value == 0) return "0";
    std::string digits;
    for (unsigned __int128 v = value; v != 0; v /= 10)
        digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    std::reverse(digits.begin(), digits.end());
    return digits;
}

Fitness Fitness::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("fitness: empty string");
    unsigned __int128 v = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("fitness: not a decimal integer: " + text);
        v = v * 10 + static_cast<unsigned>(ch - '0');
    }
    return Fitness{v};
}

namespace {

std::size_t exact_root(std::size_t n) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? r : 0;
}

std::uint64_t capacity(const ExpandedGrayPath& path, std::size_t r, std::size_t k) {
    // Room for z_L at expanded index L - r + 1 plus k more steps.
    const unsigned __int128 cap = static_cast<unsigned __int128>(path.size()) + r - k - 1;
    return cap > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(cap);
}

ExpandedGrayPath make_expanded(std::size_t n) {
    const std::size_t r = exact_root(n);
    if (r < 3) throw ConfigError("instance: n = " + std::to_string(n) + " is not a perfect square >= 9");
    return ExpandedGrayPath(r - 1, r);
}

} // namespace

Instance::Instance(std::size_t n, std::size_t k, std::uint64_t length, std::optional<double> coefficient)
    : n_(n), k_(k), r_(exact_root(n)), length_(length), coefficient_(coefficient),
      path_(make_expanded(n)) {}

Instance Instance::build(std::size_t n, std::size_t k, PathSpec spec) {
    const ExpandedGrayPath path = make_expanded(n);
    const std::size_t r = path.block();
    if (k < 4) throw ConfigError("instance: jump length k must be >= 4");
    if (k > r + 1)
        throw ConfigError("instance: jump length k = " + std::to_string(k) + " exceeds sqrt(n) + 1 = " +
                          std::to_string(r + 1));
    const std::uint64_t max_length = capacity(path, r, k);

    std::uint64_t length = 0;
    std::optional<double> coefficient;
    if (const auto* c = std::get_if<PathCoefficient>(&spec)) {
        if (!(c->a > 0) || !std::isfinite(c->a)) throw ConfigError("instance: coefficient a must be positive");
        coefficient = c->a;
        const long double want = std::floor(static_cast<long double>(c->a) *
                                            std::pow(static_cast<long double>(n), static_cast<long double>(k - 1)));
        if (want > static_cast<long double>(max_length))
            throw CapacityError("instance: path length floor(a n^(k-1)) = " + std::to_string(static_cast<double>(want)) +
                                    " exceeds capacity " + std::to_string(max_length),
                                max_length);
        length = static_cast<std::uint64_t>(want);
    } else {
        length = std::get<PathLength>(spec).length;
        if (length > max_length)
            throw CapacityError("instance: path length " + std::to_string(length) + " exceeds capacity " +
                                    std::to_string(max_length),
                                max_length);
    }
    if (length < r + 2)
        throw ConfigError("instance: path length " + std::to_string(length) + " must be at least sqrt(n) + 2 = " +
                          std::to_string(r + 2));

    Instance inst(n, k, length, coefficient);
    inst.x_plus_ = path_point(inst, length);
    inst.x_star_ = BitString(n);
    inst.x_star_.set_range(0, r);
    inst.path_.write_point(inst.star_expanded_index(), inst.x_star_, r);
    return inst;
}

double Instance::effective_coefficient() const {
    return static_cast<double>(length_) / std::pow(static_cast<double>(n_), static_cast<double>(k_ - 1));
}

std::uint64_t Instance::max_path_length() const noexcept { return capacity(path_, r_, k_); }

Fitness Instance::optimum_fitness() const noexcept {
    return Fitness{static_cast<unsigned __int128>(n_) + length_ + 1};
}

BitString path_point(const Instance& inst, PathIndex i) {
    if (i < 1 || i > inst.length())
        throw DomainError("path_point: index " + std::to_string(i) + " outside [1, " + std::to_string(inst.length()) +
                          "]");
    const std::size_t r = inst.root();
    BitString x(inst.n());
    if (i <= r) {
        x.set_range(0, i);
        return x;
    }
    x.set_range(0, r);
    inst.expanded().write_point(i - r + 1, x, r);
    return x;
}

Location locate(const Instance& inst, const BitString& x) noexcept {
    const std::size_t r = inst.root();
    const std::uint64_t full = r == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
    const std::uint64_t prefix = x.extract(0, r);
    if (prefix != full) {
        // Ramp 1^i 0^{n-i}, i < r.
        const auto ones = static_cast<std::size_t>(std::countr_one(prefix));
        if (ones == 0 || prefix != (std::uint64_t{1} << ones) - 1 || x.count() != ones) return {};
        return {Location::Kind::on_path, ones};
    }
    const auto e = inst.expanded().rank(x, r);
    if (!e) return {};
    if (*e == 1) return {Location::Kind::on_path, r};
    const std::uint64_t i = *e + r - 1;
    if (i <= inst.length()) return {Location::Kind::on_path, i};
    if (*e == inst.star_expanded_index()) return {Location::Kind::optimum, inst.length() + inst.k()};
    return {};
}

Fitness fitness_of(const Instance& inst, const BitString& x, Location where) noexcept {
    switch (where.kind) {
    case Location::Kind::on_path:
        return Fitness{static_cast<unsigned __int128>(inst.n()) + where.position};
    case Location::Kind::optimum:
        return inst.optimum_fitness();
    case Location::Kind::off_path:
        break;
    }
    return Fitness{inst.n() - x.count()};
}

std::optional<PathIndex> path_rank(const Instance& inst, const BitString& x) {
    if (x.size() != inst.n()) return std::nullopt;
    const Location where = locate(inst, x);
    if (where.kind != Location::Kind::on_path) return std::nullopt;
    return where.position;
}

Fitness evaluate(const Instance& inst, const BitString& x) {
    if (x.size() != inst.n())
        throw DomainError("evaluate: bitstring has length " + std::to_string(x.size()) + ", instance has n = " +
                          std::to_string(inst.n()));
    return fitness_of(inst, x, locate(inst, x));
}

nlohmann::json to_json(const Instance& inst) {
    nlohmann::json doc;
    doc["n"] = inst.n();
    doc["k"] = inst.k();
    doc["a"] = inst.coefficient() ? nlohmann::json(*inst.coefficient()) : nlohmann::json(nullptr);
    doc["L"] = inst.length();
    doc["r"] = inst.root();
    doc["N"] = inst.word_bits();
    doc["x_plus"] = inst.x_plus().to_hex();
    doc["x_star"] = inst.x_star().to_hex();
    return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
    try {
        const auto n = doc.at("n").get<std::size_t>();
        const auto k = doc.at("k").get<std::size_t>();
        const bool has_a = doc.contains("a") && !doc.at("a").is_null();
        Instance inst = has_a && !doc.contains("L") ? Instance::build(n, k, PathCoefficient{doc.at("a").get<double>()})
                                                   : Instance::build(n, k, PathLength{doc.at("L").get<std::uint64_t>()});
        if (has_a && doc.contains("L")) {
            const Instance from_a = Instance::build(n, k, PathCoefficient{doc.at("a").get<double>()});
            if (from_a.length() != inst.length()) throw ConfigError("instance json: a and L disagree");
            inst = from_a;
        }
        if (doc.contains("x_plus") && doc.at("x_plus").get<std::string>() != inst.x_plus().to_hex())
            throw ConfigError("instance json: x_plus does not match the construction");
        if (doc.contains("x_star") && doc.at("x_star").get<std::string>() != inst.x_star().to_hex())
            throw ConfigError("instance json: x_star does not match the construction");
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("instance json: ") + e.what());
    }
}

} // namespace hpj
