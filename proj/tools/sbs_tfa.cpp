// Scenario runner CLI for the SBS frequency-to-time-mapping simulator.
//
// Verbs:
//   simulate  run one scenario config and write its artifacts
//   suite     run every scenario config in a directory, aggregate a report
//   oracle    STFT-only analysis of a scenario's signal
//   compare   ridge statistics between two spectrogram CSV files
//
// Exit codes: 0 success, 2 config error, 3 physics/plan error,
// 4 embedded assertion failure.

#include "sbs/errors.hpp"
#include "sbs/oracle.hpp"
#include "sbs/scenario.hpp"
#include "sbs/spectrogram.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

void print_error(const sbs::Error& e) {
    nlohmann::json j{{"error", sbs::errc_name(e.code())}, {"message", e.what()}};
    std::cerr << j.dump() << std::endl;
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed) {
    const sbs::ScenarioConfig config = sbs::parse_scenario_file(config_path);
    const sbs::ScenarioResult result = sbs::run_scenario(config, out_dir, seed);
    for (const auto& artifact : result.artifacts)
        std::cout << artifact << "\n";
    for (const auto& a : result.assertions)
        std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << " (" << a.detail << ")\n";
    return result.all_assertions_passed() ? 0 : 4;
}

int run_suite_cmd(const std::string& dir, const std::string& out_dir,
                  std::optional<std::uint64_t> seed) {
    const sbs::SuiteReport report = sbs::run_suite(dir, out_dir, seed);
    std::cout << report.report_text;
    return report.failed == 0 ? 0 : 4;
}

int run_oracle(const std::string& config_path, const std::string& out_dir,
               std::optional<std::uint64_t>) {
    sbs::ScenarioConfig config = sbs::parse_scenario_file(config_path);
    if (!config.oracle)
        config.oracle = sbs::StftParams{};
    const sbs::SampledSignal sut =
        sbs::synthesize(config.signal, config.sample_rate_hz, 1);
    const sbs::Spectrogram spec = sbs::stft(sut, *config.oracle);
    std::filesystem::create_directories(out_dir);
    const auto path =
        (std::filesystem::path(out_dir) / config.outputs.oracle_csv).string();
    sbs::write_spectrogram_csv(spec, path);
    std::cout << path << "\n";
    return 0;
}

int run_compare(const std::string& path_a, const std::string& path_b, double power_floor) {
    const sbs::Spectrogram a = sbs::read_spectrogram_csv(path_a);
    const sbs::Spectrogram b = sbs::read_spectrogram_csv(path_b);
    const double floor_a = power_floor * a.max_intensity();
    const double floor_b = power_floor * b.max_intensity();
    const sbs::RidgeCompare cmp =
        sbs::compare_ridges(sbs::ridge(a, floor_a), sbs::ridge(b, floor_b));
    nlohmann::json j{{"median_abs_err_hz", cmp.median_abs_err_hz},
                     {"coverage_fraction", cmp.coverage_fraction}};
    try {
        j["linf_normalized"] = sbs::normalized_linf_distance(a, b);
    } catch (const sbs::Error&) {
        // axes share no grid: ridge stats alone
    }
    std::cout << j.dump(2) << std::endl;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SBS frequency-to-time-mapping time-frequency analysis simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", config_path, "scenario config file")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "override the configured RNG seed")
            ->each([&](const std::string&) { seed_set = true; });
    };

    auto* simulate = app.add_subcommand("simulate", "run one scenario");
    add_common(simulate, true);

    std::string suite_dir;
    auto* suite = app.add_subcommand("suite", "run a directory of scenarios");
    suite->add_option("dir", suite_dir, "directory of scenario configs")->required();
    add_common(suite, false);

    auto* oracle = app.add_subcommand("oracle", "STFT-only analysis of a scenario signal");
    add_common(oracle, true);

    std::string compare_a;
    std::string compare_b;
    double compare_floor = 0.01;
    auto* compare = app.add_subcommand("compare", "ridge stats between two spectrogram CSVs");
    compare->add_option("a", compare_a, "first spectrogram csv")->required();
    compare->add_option("b", compare_b, "second spectrogram csv")->required();
    compare->add_option("--power-floor", compare_floor,
                        "ridge power floor as a fraction of each matrix maximum");

    CLI11_PARSE(app, argc, argv);

    const std::optional<std::uint64_t> seed_override =
        seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt;

    try {
        if (simulate->parsed())
            return run_simulate(config_path, out_dir, seed_override);
        if (suite->parsed())
            return run_suite_cmd(suite_dir, out_dir, seed_override);
        if (oracle->parsed())
            return run_oracle(config_path, out_dir, seed_override);
        if (compare->parsed())
            return run_compare(compare_a, compare_b, compare_floor);
    } catch (const sbs::Error& e) {
        print_error(e);
        return sbs::errc_exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << e.what() << std::endl;
        return 2;
    }
    return 0;
}
