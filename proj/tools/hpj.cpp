// Command-line front end: theory queries, single runs, sweeps and path
// verification.
//
// Exit codes: 0 success, 1 verification mismatch, 2 config/capacity error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hpj/ea.hpp"
#include "hpj/errors.hpp"
#include "hpj/fitness.hpp"
#include "hpj/harness.hpp"
#include "hpj/oracle.hpp"
#include "hpj/theory.hpp"

namespace {

constexpr int exit_mismatch = 1;
constexpr int exit_config = 2;

extern "C" void on_interrupt(int) { hpj::request_stop(); }

hpj::PathSpec path_spec(const std::optional<std::uint64_t>& length, const std::optional<double>& a) {
    if (length) return hpj::PathLength{*length};
    if (a) return hpj::PathCoefficient{*a};
    throw hpj::ConfigError("one of --L or --a is required");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"HillPathJump (1+1) EA experiments"};
    app.require_subcommand(1);

    // calibrate
    double cal_c = 0;
    int cal_k = 4;
    auto* calibrate = app.add_subcommand("calibrate", "Coefficient a whose optimal rate constant is c");
    calibrate->add_option("--c", cal_c, "Target rate constant in (1, k)")->required();
    calibrate->add_option("--k", cal_k, "Jump length")->capture_default_str();

    // theory
    double th_a = 0;
    int th_k = 4;
    std::optional<double> th_n;
    auto* theory = app.add_subcommand("theory", "Optimal rate constant and predicted runtime for a");
    theory->add_option("--a", th_a, "Path-length coefficient")->required();
    theory->add_option("--k", th_k, "Jump length")->capture_default_str();
    theory->add_option("--n", th_n, "Dimension for the runtime prediction");

    // run
    std::size_t run_n = 0, run_k = 4;
    std::optional<std::uint64_t> run_length, run_budget;
    std::optional<double> run_a;
    double run_c = 1.0;
    std::uint64_t run_seed = 1;
    std::string run_start = "random";
    std::string run_format = "json";
    auto* run = app.add_subcommand("run", "One (1+1) EA run");
    run->add_option("--n", run_n, "Dimension (perfect square)")->required();
    run->add_option("--k", run_k, "Jump length")->capture_default_str();
    run->add_option("--L", run_length, "Path length");
    run->add_option("--a", run_a, "Path-length coefficient (L = floor(a n^(k-1)))");
    run->add_option("--c", run_c, "Mutation rate constant, p = c/n")->capture_default_str();
    run->add_option("--seed", run_seed, "Seed")->capture_default_str();
    run->add_option("--start", run_start, "random or xplus")
        ->check(CLI::IsMember({"random", "xplus"}))
        ->capture_default_str();
    run->add_option("--budget", run_budget, "Generation cap");
    run->add_option("--format", run_format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    // sweep
    std::string sweep_file;
    std::optional<std::size_t> sw_n, sw_k;
    std::optional<std::uint64_t> sw_length, sw_trials, sw_seed, sw_budget;
    std::optional<double> sw_a;
    std::optional<std::string> sw_grid, sw_output;
    std::optional<unsigned> sw_workers;
    bool sw_print_json = false;
    auto* sweep = app.add_subcommand("sweep", "Mutation-rate sweep with CSV/JSON output");
    sweep->add_option("--config", sweep_file, "JSON config file");
    sweep->add_option("--n", sw_n, "Overrides n");
    sweep->add_option("--k", sw_k, "Overrides k");
    sweep->add_option("--L", sw_length, "Overrides L");
    sweep->add_option("--a", sw_a, "Overrides a");
    sweep->add_option("--c-grid", sw_grid, "start:stop:step or comma list");
    sweep->add_option("--trials", sw_trials, "Overrides trials_per_c");
    sweep->add_option("--seed", sw_seed, "Overrides master_seed");
    sweep->add_option("--budget", sw_budget, "Overrides budget");
    sweep->add_option("--output", sw_output, "Overrides output_path (file stem)");
    sweep->add_option("--workers", sw_workers, "Worker threads");
    sweep->add_flag("--json", sw_print_json, "Print JSON instead of CSV to stdout");

    // verify-path
    std::size_t vp_n = 0, vp_k = 4;
    std::uint64_t vp_length = 0;
    auto* verify = app.add_subcommand("verify-path", "Compare implicit codecs against explicit enumeration");
    verify->add_option("--n", vp_n, "Dimension")->required();
    verify->add_option("--k", vp_k, "Jump length")->capture_default_str();
    verify->add_option("--L", vp_length, "Path length")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (*calibrate) {
            const double a = hpj::theory::calibrate(cal_c, cal_k);
            std::cout << nlohmann::json{{"c", cal_c}, {"k", cal_k}, {"a", a}}.dump(2) << '\n';
        } else if (*theory) {
            const auto result = hpj::theory::analyze(hpj::theory::ModelParams(th_a, th_k));
            nlohmann::json doc{{"a", result.a}, {"k", result.k}, {"c_star", result.c_star}, {"g_at_min", result.g_at_min}};
            if (th_n) {
                doc["n"] = *th_n;
                doc["predicted_runtime"] = result.predicted_runtime(*th_n);
            }
            std::cout << doc.dump(2) << '\n';
        } else if (*run) {
            const auto inst = hpj::Instance::build(run_n, run_k, path_spec(run_length, run_a));
            const auto rate = hpj::MutationRate::from_c(run_c, run_n);
            const auto rec = run_start == "xplus" ? hpj::run_from(inst, rate, run_seed, inst.x_plus(), run_budget)
                                                  : hpj::run(inst, rate, run_seed, run_budget);
            if (run_format == "csv")
                std::cout << hpj::run_csv_header() << '\n' << hpj::to_csv_row(rec) << '\n';
            else
                std::cout << nlohmann::json{{"instance", hpj::to_json(inst)}, {"c", run_c}, {"record", hpj::to_json(rec)}}.dump(2)
                          << '\n';
        } else if (*sweep) {
            nlohmann::json doc = nlohmann::json::object();
            if (!sweep_file.empty()) {
                std::ifstream in(sweep_file);
                if (!in) throw hpj::ConfigError("cannot open config " + sweep_file);
                try {
                    doc = nlohmann::json::parse(in);
                } catch (const nlohmann::json::parse_error& e) {
                    throw hpj::ConfigError("config " + sweep_file + ": " + e.what());
                }
            }
            if (sw_n) doc["n"] = *sw_n;
            if (sw_k) doc["k"] = *sw_k;
            if (sw_length) {
                doc["L"] = *sw_length;
                doc.erase("a");
            }
            if (sw_a) {
                doc["a"] = *sw_a;
                doc.erase("L");
            }
            if (sw_grid) doc["c_grid"] = *sw_grid;
            if (sw_trials) doc["trials_per_c"] = *sw_trials;
            if (sw_seed) doc["master_seed"] = *sw_seed;
            if (sw_budget) doc["budget"] = *sw_budget;
            if (sw_output) doc["output_path"] = *sw_output;
            if (sw_workers) doc["workers"] = *sw_workers;

            const auto cfg = hpj::sweep_config_from_json(doc);
            std::signal(SIGINT, on_interrupt);
            const auto result = hpj::sweep(cfg);
            std::cout << hpj::report(result, sw_print_json ? hpj::ReportFormat::json : hpj::ReportFormat::csv);
            if (result.interrupted) std::cerr << "interrupted: partial results written\n";
        } else if (*verify) {
            const auto inst = hpj::Instance::build(vp_n, vp_k, hpj::PathLength{vp_length});
            const auto paths = hpj::oracle::compare_with_implicit(inst);
            std::cout << "path points checked: " << paths.checked << ", mismatches: " << paths.mismatches << '\n';
            for (const auto& line : paths.first_mismatches)
                std::cout << "  " << line << '\n';
            bool ok = paths.ok();
            if (vp_n <= 16) {
                const auto fit = hpj::oracle::exhaustive_fitness_check(vp_n, vp_k, vp_length);
                std::cout << "fitness inputs checked: " << fit.checked << ", mismatches: " << fit.mismatches << '\n';
                for (const auto& line : fit.first_mismatches)
                    std::cout << "  " << line << '\n';
                ok = ok && fit.ok();
            }
            std::cout << (ok ? "OK" : "MISMATCH") << '\n';
            return ok ? 0 : exit_mismatch;
        }
    } catch (const hpj::CapacityError& e) {
        std::cerr << "error: " << e.what() << " (max feasible L = " << e.max_feasible_length() << ")\n";
        return exit_config;
    } catch (const hpj::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const hpj::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return 0;
}
