#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hpj/ea.hpp"
#include "hpj/fitness.hpp"

namespace hpj {

// Directory that relative output paths resolve against when set.
inline constexpr const char* output_dir_env = "HPJ_OUTPUT_DIR";

struct SweepConfig {
    std::size_t n = 0;
    std::size_t k = 4;
    std::optional<std::uint64_t> length;  // L
    std::optional<double> coefficient;    // a, used when L is absent
    std::vector<double> c_grid;
    std::uint64_t trials_per_c = 200;
    std::uint64_t master_seed = 1;
    std::uint64_t budget = 10'000'000'000ULL;
    // File stem; "<stem>.csv" and "<stem>.json" are written. Empty: no files.
    std::string output_path;
    unsigned workers = 1;
};

// Throws ConfigError on missing keys, bad types or violated invariants.
SweepConfig sweep_config_from_json(const nlohmann::json& doc);
SweepConfig load_sweep_config(const std::filesystem::path& file);
void validate(const SweepConfig& cfg);
// "1:4:0.25" (inclusive range) or "1,1.5,2".
std::vector<double> parse_c_grid(std::string_view text);

struct SweepRow {
    double c = 0;
    std::uint64_t trials = 0;
    double mean_T = 0;
    std::optional<double> stderr_T;  // undefined for a single trial
    std::optional<double> mean_path_phase;
    std::optional<double> mean_jump_wait;
    std::uint64_t early_jumps = 0;
    std::uint64_t truncated = 0;
    double predicted_T = 0;
    double ratio = 0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t length = 0;
    double effective_coefficient = 0;
    std::uint64_t master_seed = 0;
    std::vector<SweepRow> rows;  // sorted by c
    std::optional<double> empirical_c_star;
    // Continuous argmin over c of the predicted runtime.
    double model_c_star = 0;
    bool interrupted = false;

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

// Seed of trial `trial` at grid value c.
std::uint64_t trial_seed(std::uint64_t master_seed, double c, std::uint64_t trial);

// Aggregates per-c trial records (in trial order) into one row.
SweepRow summarize(const Instance& inst, double c, const std::vector<RunRecord>& records);

// Runs the sweep, writes CSV and JSON when output_path is set. Output is
// identical for any number of workers.
SweepResult sweep(const SweepConfig& cfg);

// Stops running sweeps; completed grid points are still reported.
void request_stop() noexcept;
void clear_stop() noexcept;
bool stop_requested() noexcept;

enum class ReportFormat { csv, json };
std::string report(const SweepResult& result, ReportFormat format);
SweepResult sweep_result_from_json(const nlohmann::json& doc);

// Resolves a relative stem against $HPJ_OUTPUT_DIR.
std::filesystem::path resolve_output(const std::string& stem);
void write_text(const std::filesystem::path& file, std::string_view text);

std::string run_csv_header();
std::string to_csv_row(const RunRecord& rec);
nlohmann::json to_json(const RunRecord& rec);
RunRecord run_record_from_json(const nlohmann::json& doc);

} // namespace hpj
