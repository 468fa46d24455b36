#pragma once

#include "sbs/link.hpp"
#include "sbs/oracle.hpp"
#include "sbs/parallel.hpp"
#include "sbs/timedivision.hpp"
#include "sbs/waveforms.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sbs {

enum class LinkKind { TimeDivision, Parallel };

struct OutputPaths {
    std::string spectrogram_csv;
    std::string heatmap_image;
    std::string metadata;
    std::string ridge_csv;
    std::string oracle_csv;
};

struct RidgeTruthAssertion {
    double power_floor = 0.01;
    double min_fraction_within_one_bin = 0.95;
};

struct TwoToneAssertion {
    double f_a_hz = 0.0;
    double f_b_hz = 0.0;
    bool expect_resolved = true;
};

struct Assertions {
    std::optional<RidgeTruthAssertion> ridge_vs_truth;
    std::optional<TwoToneAssertion> two_tone;
    std::optional<double> rms_ridge_error_max_hz;
    std::optional<std::pair<double, double>> pulse_fwhm_s_range;
};

struct ScenarioConfig {
    std::string name;
    double sample_rate_hz = 10e9;
    SignalSpec signal;
    LinkKind link = LinkKind::TimeDivision;
    LinkConfig link_config;
    SfcwPlan sfcw_plan;     // used when link == TimeDivision
    BranchPlan branch_plan; // used when link == Parallel
    std::optional<double> reference_freq_hz; // default: band edge f_1
    std::size_t n_periods = 1;               // parallel-link analysis span
    double reference_min_height_ratio = 0.5;
    double reference_min_width_ratio = 2.0;
    double ridge_power_floor = 0.01;
    OutputPaths outputs; // names resolved against the output directory
    std::optional<StftParams> oracle;
    Assertions assertions;
};

ScenarioConfig parse_scenario_file(const std::string& path);
ScenarioConfig parse_scenario_json(const std::string& json_text, const std::string& name_hint);

struct AssertionResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ScenarioResult {
    std::string name;
    std::map<std::string, double> metrics; // deterministic ordering
    std::vector<AssertionResult> assertions;
    std::vector<std::string> artifacts;
    bool all_assertions_passed() const;
};

// Run one scenario and write its artifacts under out_dir. seed_override, if
// set, replaces link_config.rng_seed. Deterministic: identical config + seed
// produce byte-identical artifacts.
ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& out_dir,
                            std::optional<std::uint64_t> seed_override = std::nullopt);

struct SuiteReport {
    std::vector<ScenarioResult> results; // ordered by scenario name
    std::size_t failed = 0;
    std::string report_text;
};

// Run every *.json scenario in config_dir (sorted by file name), write
// per-scenario artifacts under out_dir/<name>/ and the aggregate report to
// out_dir/report.txt.
SuiteReport run_suite(const std::string& config_dir, const std::string& out_dir,
                      std::optional<std::uint64_t> seed_override = std::nullopt);

} // namespace sbs
