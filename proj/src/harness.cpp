#include "hpj/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "hpj/errors.hpp"
#include "hpj/rng.hpp"
#include "hpj/theory.hpp"

namespace hpj {

namespace {

std::atomic<bool> g_stop{false};

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

template <class T>
std::string format_optional_int(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string();
}

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> optional_double(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
    return doc.at(key).get<double>();
}

std::optional<std::uint64_t> optional_u64(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
    return doc.at(key).get<std::uint64_t>();
}

Instance instance_for(const SweepConfig& cfg) {
    if (cfg.length) return Instance::build(cfg.n, cfg.k, PathLength{*cfg.length});
    return Instance::build(cfg.n, cfg.k, PathCoefficient{*cfg.coefficient});
}

} // namespace

void request_stop() noexcept { g_stop.store(true); }
void clear_stop() noexcept { g_stop.store(false); }
bool stop_requested() noexcept { return g_stop.load(); }

std::vector<double> parse_c_grid(std::string_view text) {
    std::vector<double> grid;
    const std::string s(text);
    try {
        if (s.find(':') != std::string::npos) {
            double start, stop, step;
            char sep1, sep2;
            std::istringstream in(s);
            if (!(in >> start >> sep1 >> stop >> sep2 >> step) || sep1 != ':' || sep2 != ':' || !(step > 0))
                throw ConfigError("c grid: expected start:stop:step, got '" + s + "'");
            // Index-based so the values do not accumulate rounding error.
            const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
            for (std::size_t i = 0; i < count; ++i)
                grid.push_back(start + step * static_cast<double>(i));
        } else {
            std::stringstream in(s);
            std::string item;
            while (std::getline(in, item, ','))
                grid.push_back(std::stod(item));
        }
    } catch (const std::logic_error&) {
        throw ConfigError("c grid: cannot parse '" + s + "'");
    }
    return grid;
}

void validate(const SweepConfig& cfg) {
    if (!cfg.length && !cfg.coefficient) throw ConfigError("sweep: one of L or a is required");
    if (cfg.trials_per_c < 1) throw ConfigError("sweep: trials_per_c must be >= 1");
    if (cfg.workers < 1) throw ConfigError("sweep: workers must be >= 1");
    for (double c : cfg.c_grid)
        if (!(c > 0.0 && c < static_cast<double>(cfg.n)))
            throw ConfigError("sweep: c = " + format_number(c) + " outside (0, n)");
}

SweepConfig sweep_config_from_json(const nlohmann::json& doc) {
    SweepConfig cfg;
    try {
        cfg.n = doc.at("n").get<std::size_t>();
        cfg.k = doc.value("k", cfg.k);
        cfg.length = optional_u64(doc, "L");
        cfg.coefficient = optional_double(doc, "a");
        if (doc.contains("c_grid")) {
            const auto& grid = doc.at("c_grid");
            cfg.c_grid = grid.is_string() ? parse_c_grid(grid.get<std::string>()) : grid.get<std::vector<double>>();
        }
        cfg.trials_per_c = doc.value("trials_per_c", cfg.trials_per_c);
        cfg.master_seed = doc.value("master_seed", cfg.master_seed);
        cfg.budget = doc.value("budget", cfg.budget);
        cfg.output_path = doc.value("output_path", cfg.output_path);
        cfg.workers = doc.value("workers", cfg.workers);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("sweep config: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("sweep config: cannot open " + file.string());
    try {
        return sweep_config_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("sweep config " + file.string() + ": " + e.what());
    }
}

std::uint64_t trial_seed(std::uint64_t master_seed, double c, std::uint64_t trial) {
    return derive_seed(derive_seed(master_seed, std::bit_cast<std::uint64_t>(c)), trial);
}

SweepRow summarize(const Instance& inst, double c, const std::vector<RunRecord>& records) {
    SweepRow row;
    row.c = c;
    row.trials = records.size();

    double sum = 0;
    double path_sum = 0, jump_sum = 0;
    std::uint64_t path_count = 0, jump_count = 0;
    for (const auto& rec : records) {
        sum += static_cast<double>(rec.steps_total);
        if (rec.early_jump) ++row.early_jumps;
        if (rec.truncated) ++row.truncated;
        const auto path_end = rec.step_xplus ? rec.step_xplus : rec.step_xstar;
        if (rec.step_path_entry && path_end) {
            path_sum += static_cast<double>(*path_end - *rec.step_path_entry);
            ++path_count;
        }
        if (rec.jump_wait) {
            jump_sum += static_cast<double>(*rec.jump_wait);
            ++jump_count;
        }
    }
    const auto trials = static_cast<double>(records.size());
    row.mean_T = records.empty() ? 0.0 : sum / trials;
    if (records.size() > 1) {
        double ss = 0;
        for (const auto& rec : records) {
            const double d = static_cast<double>(rec.steps_total) - row.mean_T;
            ss += d * d;
        }
        row.stderr_T = std::sqrt(ss / (trials - 1.0) / trials);
    }
    if (path_count) row.mean_path_phase = path_sum / static_cast<double>(path_count);
    if (jump_count) row.mean_jump_wait = jump_sum / static_cast<double>(jump_count);
    row.predicted_T = theory::predicted_runtime_for_length(static_cast<double>(inst.length()),
                                                           static_cast<double>(inst.n()), static_cast<int>(inst.k()), c);
    row.ratio = row.mean_T / row.predicted_T;
    return row;
}

SweepResult sweep(const SweepConfig& cfg) {
    validate(cfg);
    const Instance inst = instance_for(cfg);

    std::vector<double> grid = cfg.c_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const std::uint64_t per_c = cfg.trials_per_c;
    const std::size_t total = grid.size() * per_c;
    std::vector<RunRecord> slots(total);
    std::vector<char> completed(total, 0);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        RunOptions options;
        options.budget = cfg.budget;
        options.cancel = &g_stop;
        for (std::size_t task = next.fetch_add(1); task < total && !stop_requested(); task = next.fetch_add(1)) {
            const double c = grid[task / per_c];
            const std::uint64_t trial = task % per_c;
            slots[task] = run(inst, MutationRate::from_c(c, cfg.n), trial_seed(cfg.master_seed, c, trial), options);
            completed[task] = !stop_requested();
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < cfg.workers; ++w)
            pool.emplace_back(worker);
        worker();
    }

    SweepResult result;
    result.n = inst.n();
    result.k = inst.k();
    result.length = inst.length();
    result.effective_coefficient = inst.effective_coefficient();
    result.master_seed = cfg.master_seed;
    result.model_c_star = theory::root_Z(theory::ModelParams(result.effective_coefficient, static_cast<int>(inst.k())));
    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
        const auto first = slots.begin() + static_cast<std::ptrdiff_t>(ci * per_c);
        const auto done = completed.begin() + static_cast<std::ptrdiff_t>(ci * per_c);
        if (!std::all_of(done, done + static_cast<std::ptrdiff_t>(per_c), [](char f) { return f != 0; })) {
            result.interrupted = true;
            continue;
        }
        result.rows.push_back(summarize(inst, grid[ci], std::vector<RunRecord>(first, first + static_cast<std::ptrdiff_t>(per_c))));
    }
    if (!result.rows.empty()) {
        const auto best = std::min_element(result.rows.begin(), result.rows.end(),
                                           [](const SweepRow& a, const SweepRow& b) { return a.mean_T < b.mean_T; });
        result.empirical_c_star = best->c;
    }

    if (!cfg.output_path.empty()) {
        const auto stem = resolve_output(cfg.output_path);
        write_text(std::filesystem::path(stem).concat(".csv"), report(result, ReportFormat::csv));
        write_text(std::filesystem::path(stem).concat(".json"), report(result, ReportFormat::json));
    }
    return result;
}

std::string report(const SweepResult& result, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::string out = "c,trials,mean_T,stderr_T,mean_path_phase,mean_jump_wait,early_jumps,predicted_T,ratio\n";
        for (const auto& row : result.rows) {
            out += format_number(row.c) + ',' + std::to_string(row.trials) + ',' + format_number(row.mean_T) + ',' +
                   format_optional(row.stderr_T) + ',' + format_optional(row.mean_path_phase) + ',' +
                   format_optional(row.mean_jump_wait) + ',' + std::to_string(row.early_jumps) + ',' +
                   format_number(row.predicted_T) + ',' + format_number(row.ratio) + '\n';
        }
        return out;
    }

    nlohmann::json doc;
    doc["n"] = result.n;
    doc["k"] = result.k;
    doc["L"] = result.length;
    doc["a_eff"] = result.effective_coefficient;
    doc["master_seed"] = result.master_seed;
    doc["model_c_star"] = result.model_c_star;
    doc["empirical_c_star"] = optional_json(result.empirical_c_star);
    doc["interrupted"] = result.interrupted;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : result.rows) {
        doc["rows"].push_back({{"c", row.c},
                               {"trials", row.trials},
                               {"mean_T", row.mean_T},
                               {"stderr_T", optional_json(row.stderr_T)},
                               {"mean_path_phase", optional_json(row.mean_path_phase)},
                               {"mean_jump_wait", optional_json(row.mean_jump_wait)},
                               {"early_jumps", row.early_jumps},
                               {"truncated", row.truncated},
                               {"predicted_T", row.predicted_T},
                               {"ratio", row.ratio}});
    }
    return doc.dump(2) + '\n';
}

SweepResult sweep_result_from_json(const nlohmann::json& doc) {
    SweepResult result;
    try {
        result.n = doc.at("n").get<std::size_t>();
        result.k = doc.at("k").get<std::size_t>();
        result.length = doc.at("L").get<std::uint64_t>();
        result.effective_coefficient = doc.at("a_eff").get<double>();
        result.master_seed = doc.at("master_seed").get<std::uint64_t>();
        result.model_c_star = doc.at("model_c_star").get<double>();
        result.empirical_c_star = optional_double(doc, "empirical_c_star");
        result.interrupted = doc.value("interrupted", false);
        for (const auto& r : doc.at("rows")) {
            SweepRow row;
            row.c = r.at("c").get<double>();
            row.trials = r.at("trials").get<std::uint64_t>();
            row.mean_T = r.at("mean_T").get<double>();
            row.stderr_T = optional_double(r, "stderr_T");
            row.mean_path_phase = optional_double(r, "mean_path_phase");
            row.mean_jump_wait = optional_double(r, "mean_jump_wait");
            row.early_jumps = r.at("early_jumps").get<std::uint64_t>();
            row.truncated = r.value("truncated", std::uint64_t{0});
            row.predicted_T = r.at("predicted_T").get<double>();
            row.ratio = r.at("ratio").get<double>();
            result.rows.push_back(row);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("sweep result json: ") + e.what());
    }
    return result;
}

std::filesystem::path resolve_output(const std::string& stem) {
    std::filesystem::path path(stem);
    if (path.is_relative())
        if (const char* dir = std::getenv(output_dir_env); dir && *dir) path = std::filesystem::path(dir) / path;
    return path;
}

void write_text(const std::filesystem::path& file, std::string_view text) {
    if (file.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(file.parent_path(), ec);
        if (ec) throw std::runtime_error("cannot create directory " + file.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

std::string run_csv_header() {
    return "seed,steps_total,step_path_entry,fitness_at_entry,step_xplus,step_xstar,early_jump,jump_wait,truncated";
}

std::string to_csv_row(const RunRecord& rec) {
    return std::to_string(rec.seed) + ',' + std::to_string(rec.steps_total) + ',' +
           format_optional_int(rec.step_path_entry) + ',' +
           (rec.fitness_at_entry ? rec.fitness_at_entry->to_string() : std::string()) + ',' +
           format_optional_int(rec.step_xplus) + ',' + format_optional_int(rec.step_xstar) + ',' +
           (rec.early_jump ? "1" : "0") + ',' + format_optional_int(rec.jump_wait) + ',' + (rec.truncated ? "1" : "0");
}

nlohmann::json to_json(const RunRecord& rec) {
    auto opt = [](const std::optional<std::uint64_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    return {{"seed", rec.seed},
            {"steps_total", rec.steps_total},
            {"step_path_entry", opt(rec.step_path_entry)},
            // Decimal string: the value may not fit in 64 bits.
            {"fitness_at_entry",
             rec.fitness_at_entry ? nlohmann::json(rec.fitness_at_entry->to_string()) : nlohmann::json(nullptr)},
            {"step_xplus", opt(rec.step_xplus)},
            {"step_xstar", opt(rec.step_xstar)},
            {"early_jump", rec.early_jump},
            {"jump_wait", opt(rec.jump_wait)},
            {"truncated", rec.truncated}};
}

RunRecord run_record_from_json(const nlohmann::json& doc) {
    RunRecord rec;
    try {
        rec.seed = doc.at("seed").get<std::uint64_t>();
        rec.steps_total = doc.at("steps_total").get<std::uint64_t>();
        rec.step_path_entry = optional_u64(doc, "step_path_entry");
        if (doc.contains("fitness_at_entry") && !doc.at("fitness_at_entry").is_null())
            rec.fitness_at_entry = Fitness::parse(doc.at("fitness_at_entry").get<std::string>());
        rec.step_xplus = optional_u64(doc, "step_xplus");
        rec.step_xstar = optional_u64(doc, "step_xstar");
        rec.early_jump = doc.at("early_jump").get<bool>();
        rec.jump_wait = optional_u64(doc, "jump_wait");
        rec.truncated = doc.at("truncated").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("run record json: ") + e.what());
    }
    return rec;
}

} // namespace hpj
