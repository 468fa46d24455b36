#include "sbs/scenario.hpp"

#include "sbs/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace sbs {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& where) {
    if (!j.is_object())
        throw Error(Errc::ConfigInvalid, where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw Error(Errc::ConfigInvalid, "unknown key '" + key + "' in " + where);
    }
}

double get_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw Error(Errc::ConfigInvalid, where + " needs numeric '" + key + "'");
    return j[key].get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number())
        throw Error(Errc::ConfigInvalid, "'" + key + "' must be numeric");
    return j[key].get<double>();
}

SignalSpec parse_signal(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw Error(Errc::ConfigInvalid, "signal needs a string 'type'");
    const std::string type = j["type"].get<std::string>();

    if (type == "tone") {
        require_keys(j, {"type", "f_hz", "period_s"}, "signal");
        return ToneSpec{get_number(j, "f_hz", "tone"), get_number(j, "period_s", "tone")};
    }
    if (type == "multi_tone") {
        require_keys(j, {"type", "f_list_hz", "period_s"}, "signal");
        if (!j.contains("f_list_hz") || !j["f_list_hz"].is_array())
            throw Error(Errc::ConfigInvalid, "multi_tone needs array 'f_list_hz'");
        MultiToneSpec s;
        for (const auto& f : j["f_list_hz"])
            s.f_list_hz.push_back(f.get<double>());
        s.period_s = get_number(j, "period_s", "multi_tone");
        return s;
    }
    if (type == "lfm" || type == "dual_chirp_lfm") {
        require_keys(j, {"type", "f_start_hz", "f_end_hz", "period_s"}, "signal");
        const double f0 = get_number(j, "f_start_hz", type);
        const double f1 = get_number(j, "f_end_hz", type);
        const double period = get_number(j, "period_s", type);
        if (type == "lfm")
            return LfmSpec{f0, f1, period};
        return DualChirpLfmSpec{f0, f1, period};
    }
    if (type == "nlfm") {
        require_keys(j, {"type", "f_start_hz", "f_end_hz", "period_s", "shape_coeffs"},
                     "signal");
        NlfmSpec s;
        s.f_start_hz = get_number(j, "f_start_hz", "nlfm");
        s.f_end_hz = get_number(j, "f_end_hz", "nlfm");
        s.period_s = get_number(j, "period_s", "nlfm");
        if (j.contains("shape_coeffs")) {
            s.shape_coeffs.clear();
            for (const auto& c : j["shape_coeffs"])
                s.shape_coeffs.push_back(c.get<double>());
        }
        return s;
    }
    if (type == "frequency_hopping") {
        require_keys(j, {"type", "hops", "period_s"}, "signal");
        if (!j.contains("hops") || !j["hops"].is_array())
            throw Error(Errc::ConfigInvalid, "frequency_hopping needs array 'hops'");
        FrequencyHoppingSpec s;
        for (const auto& hop : j["hops"]) {
            require_keys(hop, {"start_s", "f_hz"}, "hop entry");
            s.hop_table.push_back(
                {get_number(hop, "start_s", "hop"), get_number(hop, "f_hz", "hop")});
        }
        s.period_s = get_number(j, "period_s", "frequency_hopping");
        return s;
    }
    if (type == "step_frequency") {
        require_keys(j, {"type", "f_start_hz", "f_step_hz", "dwell_s", "n_steps"}, "signal");
        StepFrequencySpec s;
        s.f_start_hz = get_number(j, "f_start_hz", "step_frequency");
        s.f_step_hz = get_number(j, "f_step_hz", "step_frequency");
        s.dwell_s = get_number(j, "dwell_s", "step_frequency");
        s.n_steps = static_cast<std::size_t>(get_number(j, "n_steps", "step_frequency"));
        return s;
    }
    throw Error(Errc::ConfigInvalid, "unknown signal type '" + type + "'");
}

json signal_to_json(const SignalSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ToneSpec>) {
                return {{"type", "tone"}, {"f_hz", s.f_hz}, {"period_s", s.period_s}};
            } else if constexpr (std::is_same_v<T, MultiToneSpec>) {
                return {{"type", "multi_tone"},
                        {"f_list_hz", s.f_list_hz},
                        {"period_s", s.period_s}};
            } else if constexpr (std::is_same_v<T, LfmSpec>) {
                return {{"type", "lfm"},
                        {"f_start_hz", s.f_start_hz},
                        {"f_end_hz", s.f_end_hz},
                        {"period_s", s.period_s}};
            } else if constexpr (std::is_same_v<T, DualChirpLfmSpec>) {
                return {{"type", "dual_chirp_lfm"},
                        {"f_start_hz", s.f_start_hz},
                        {"f_end_hz", s.f_end_hz},
                        {"period_s", s.period_s}};
            } else if constexpr (std::is_same_v<T, NlfmSpec>) {
                return {{"type", "nlfm"},
                        {"f_start_hz", s.f_start_hz},
                        {"f_end_hz", s.f_end_hz},
                        {"period_s", s.period_s},
                        {"shape_coeffs", s.shape_coeffs}};
            } else if constexpr (std::is_same_v<T, FrequencyHoppingSpec>) {
                json hops = json::array();
                for (const auto& hop : s.hop_table)
                    hops.push_back({{"start_s", hop.start_s}, {"f_hz", hop.f_hz}});
                return {{"type", "frequency_hopping"},
                        {"hops", hops},
                        {"period_s", s.period_s}};
            } else {
                return {{"type", "step_frequency"},
                        {"f_start_hz", s.f_start_hz},
                        {"f_step_hz", s.f_step_hz},
                        {"dwell_s", s.dwell_s},
                        {"n_steps", s.n_steps}};
            }
        },
        spec);
}

LinkConfig parse_link_config(const json& j) {
    LinkConfig c;
    if (j.is_null())
        return c;
    require_keys(j,
                 {"f_sbs_hz", "f_pump_offset_hz", "modulation_index", "gain_fwhm_hz",
                  "peak_gain_db", "detector_lpf_hz", "output_rate_hz", "noise_rms",
                  "rng_seed"},
                 "link_config");
    c.f_sbs_hz = get_number_or(j, "f_sbs_hz", c.f_sbs_hz);
    c.f_pump_offset_hz = get_number_or(j, "f_pump_offset_hz", c.f_pump_offset_hz);
    c.modulation_index = get_number_or(j, "modulation_index", c.modulation_index);
    c.gain_fwhm_hz = get_number_or(j, "gain_fwhm_hz", c.gain_fwhm_hz);
    c.peak_gain_db = get_number_or(j, "peak_gain_db", c.peak_gain_db);
    c.detector_lpf_hz = get_number_or(j, "detector_lpf_hz", c.detector_lpf_hz);
    c.output_rate_hz = get_number_or(j, "output_rate_hz", c.output_rate_hz);
    c.noise_rms = get_number_or(j, "noise_rms", c.noise_rms);
    if (j.contains("rng_seed"))
        c.rng_seed = j["rng_seed"].get<std::uint64_t>();
    return c;
}

} // namespace

ScenarioConfig parse_scenario_json(const std::string& json_text,
                                   const std::string& name_hint) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(Errc::ConfigInvalid, std::string("JSON parse failure: ") + e.what());
    }
    require_keys(j,
                 {"name", "sample_rate_hz", "signal", "link", "link_config", "plan",
                  "reference_freq_hz", "n_periods", "reference_min_height_ratio",
                  "reference_min_width_ratio", "ridge_power_floor", "outputs", "oracle",
                  "assertions"},
                 "scenario");

    ScenarioConfig cfg;
    cfg.name = j.contains("name") ? j["name"].get<std::string>() : name_hint;
    if (cfg.name.empty())
        throw Error(Errc::ConfigInvalid, "scenario needs a name");
    cfg.sample_rate_hz = get_number_or(j, "sample_rate_hz", cfg.sample_rate_hz);

    if (!j.contains("signal"))
        throw Error(Errc::ConfigInvalid, "scenario needs a 'signal'");
    cfg.signal = parse_signal(j["signal"]);

    const std::string link =
        j.contains("link") ? j["link"].get<std::string>() : "time_division";
    if (link == "time_division")
        cfg.link = LinkKind::TimeDivision;
    else if (link == "parallel")
        cfg.link = LinkKind::Parallel;
    else
        throw Error(Errc::ConfigInvalid, "link must be 'time_division' or 'parallel'");

    cfg.link_config = parse_link_config(j.contains("link_config") ? j["link_config"] : json());

    if (!j.contains("plan"))
        throw Error(Errc::ConfigInvalid, "scenario needs a 'plan'");
    const json& plan = j["plan"];
    if (cfg.link == LinkKind::TimeDivision) {
        require_keys(plan, {"f_step1_hz", "delta_step_hz", "step_period_s", "n_steps"},
                     "plan");
        cfg.sfcw_plan.f_step1_hz = get_number(plan, "f_step1_hz", "plan");
        cfg.sfcw_plan.delta_step_hz = get_number(plan, "delta_step_hz", "plan");
        cfg.sfcw_plan.step_period_s = get_number(plan, "step_period_s", "plan");
        cfg.sfcw_plan.n_steps =
            static_cast<std::size_t>(get_number(plan, "n_steps", "plan"));
        validate_plan_fields(cfg.sfcw_plan);
    } else {
        require_keys(plan, {"f_base_hz", "delta_f_hz", "n_branches", "direction"}, "plan");
        cfg.branch_plan.f_base_hz = get_number(plan, "f_base_hz", "plan");
        cfg.branch_plan.delta_f_hz = get_number(plan, "delta_f_hz", "plan");
        cfg.branch_plan.n_branches =
            static_cast<std::size_t>(get_number(plan, "n_branches", "plan"));
        if (plan.contains("direction")) {
            const std::string d = plan["direction"].get<std::string>();
            if (d == "up")
                cfg.branch_plan.direction = ShiftDirection::Up;
            else if (d == "down")
                cfg.branch_plan.direction = ShiftDirection::Down;
            else
                throw Error(Errc::ConfigInvalid, "direction must be 'up' or 'down'");
        }
        validate_branch_plan(cfg.branch_plan);
    }

    if (j.contains("reference_freq_hz"))
        cfg.reference_freq_hz = j["reference_freq_hz"].get<double>();
    if (j.contains("n_periods"))
        cfg.n_periods = j["n_periods"].get<std::size_t>();
    cfg.reference_min_height_ratio =
        get_number_or(j, "reference_min_height_ratio", cfg.reference_min_height_ratio);
    cfg.reference_min_width_ratio =
        get_number_or(j, "reference_min_width_ratio", cfg.reference_min_width_ratio);
    cfg.ridge_power_floor = get_number_or(j, "ridge_power_floor", cfg.ridge_power_floor);

    cfg.outputs.spectrogram_csv = cfg.name + ".spectrogram.csv";
    cfg.outputs.heatmap_image = cfg.name + ".heatmap.pgm";
    cfg.outputs.metadata = cfg.name + ".metadata.json";
    cfg.outputs.ridge_csv = cfg.name + ".ridge.csv";
    cfg.outputs.oracle_csv = cfg.name + ".oracle.csv";
    if (j.contains("outputs")) {
        const json& out = j["outputs"];
        require_keys(out,
                     {"spectrogram_csv", "heatmap_image", "metadata", "ridge_csv",
                      "oracle_csv"},
                     "outputs");
        auto path_of = [&](const char* key, std::string& slot) {
            if (out.contains(key)) {
                slot = out[key].get<std::string>();
                if (slot.empty())
                    throw Error(Errc::ConfigInvalid,
                                std::string("output path '") + key + "' is empty");
            }
        };
        path_of("spectrogram_csv", cfg.outputs.spectrogram_csv);
        path_of("heatmap_image", cfg.outputs.heatmap_image);
        path_of("metadata", cfg.outputs.metadata);
        path_of("ridge_csv", cfg.outputs.ridge_csv);
        path_of("oracle_csv", cfg.outputs.oracle_csv);
    }

    if (j.contains("oracle") && !j["oracle"].is_null()) {
        const json& o = j["oracle"];
        require_keys(o, {"window_len_samples", "hop_samples", "window_fn"}, "oracle");
        StftParams params;
        params.window_len_samples = static_cast<std::size_t>(
            get_number_or(o, "window_len_samples", 512));
        params.hop_samples =
            static_cast<std::size_t>(get_number_or(o, "hop_samples", 128));
        if (o.contains("window_fn")) {
            const std::string w = o["window_fn"].get<std::string>();
            if (w == "hann")
                params.window_fn = WindowFn::Hann;
            else if (w == "rectangular")
                params.window_fn = WindowFn::Rectangular;
            else
                throw Error(Errc::ConfigInvalid, "window_fn must be 'hann' or 'rectangular'");
        }
        cfg.oracle = params;
    }

    if (j.contains("assertions")) {
        const json& a = j["assertions"];
        require_keys(a,
                     {"ridge_vs_truth", "two_tone", "rms_ridge_error_max_hz",
                      "pulse_fwhm_s_range"},
                     "assertions");
        if (a.contains("ridge_vs_truth")) {
            const json& r = a["ridge_vs_truth"];
            require_keys(r, {"power_floor", "min_fraction_within_one_bin"}, "ridge_vs_truth");
            RidgeTruthAssertion rt;
            rt.power_floor = get_number_or(r, "power_floor", rt.power_floor);
            rt.min_fraction_within_one_bin =
                get_number_or(r, "min_fraction_within_one_bin", rt.min_fraction_within_one_bin);
            cfg.assertions.ridge_vs_truth = rt;
        }
        if (a.contains("two_tone")) {
            const json& t = a["two_tone"];
            require_keys(t, {"f_a_hz", "f_b_hz", "expect_resolved"}, "two_tone");
            TwoToneAssertion tt;
            tt.f_a_hz = get_number(t, "f_a_hz", "two_tone");
            tt.f_b_hz = get_number(t, "f_b_hz", "two_tone");
            tt.expect_resolved = t.contains("expect_resolved")
                                     ? t["expect_resolved"].get<bool>()
                                     : true;
            cfg.assertions.two_tone = tt;
        }
        if (a.contains("rms_ridge_error_max_hz"))
            cfg.assertions.rms_ridge_error_max_hz =
                a["rms_ridge_error_max_hz"].get<double>();
        if (a.contains("pulse_fwhm_s_range")) {
            const auto& range = a["pulse_fwhm_s_range"];
            if (!range.is_array() || range.size() != 2)
                throw Error(Errc::ConfigInvalid, "pulse_fwhm_s_range must be [lo, hi]");
            cfg.assertions.pulse_fwhm_s_range =
                std::make_pair(range[0].get<double>(), range[1].get<double>());
        }
    }
    return cfg;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::ConfigInvalid, "cannot open scenario file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario_json(text, fs::path(path).stem().string());
}

bool ScenarioResult::all_assertions_passed() const {
    return std::all_of(assertions.begin(), assertions.end(),
                       [](const AssertionResult& a) { return a.passed; });
}

namespace {

std::string format_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_ridge_csv(const RidgeSeries& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::ConfigInvalid, "cannot open for writing: " + path);
    out << "time_s,freq_hz\n";
    char buf[80];
    for (std::size_t i = 0; i < r.time_axis_s.size(); ++i) {
        if (r.freq_hz[i])
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", r.time_axis_s[i], *r.freq_hz[i]);
        else
            std::snprintf(buf, sizeof(buf), "%.12g,\n", r.time_axis_s[i]);
        out << buf;
    }
}

// Fraction of all time columns whose ridge lies within one bin of some
// component of the ground-truth instantaneous frequency; plus the RMS error
// over present columns.
struct TruthComparison {
    double fraction_within_one_bin = 0.0;
    double rms_error_hz = 0.0;
};

TruthComparison compare_ridge_to_truth(const RidgeSeries& r, const SignalSpec& spec,
                                       double bin_hz) {
    TruthComparison out;
    if (r.time_axis_s.empty())
        return out;
    const double period = period_of(spec);
    std::size_t within = 0;
    double acc = 0.0;
    std::size_t present = 0;
    for (std::size_t i = 0; i < r.time_axis_s.size(); ++i) {
        if (!r.freq_hz[i])
            continue;
        double t = std::fmod(r.time_axis_s[i], period);
        if (t < 0.0)
            t += period;
        if (t >= period)
            t = 0.0;
        double best = std::numeric_limits<double>::infinity();
        for (double truth : instantaneous_frequency(spec, t))
            best = std::min(best, std::abs(*r.freq_hz[i] - truth));
        ++present;
        acc += best * best;
        if (best <= bin_hz * (1.0 + 1e-9))
            ++within;
    }
    out.fraction_within_one_bin =
        static_cast<double>(within) / static_cast<double>(r.time_axis_s.size());
    out.rms_error_hz = present > 0 ? std::sqrt(acc / static_cast<double>(present)) : 0.0;
    return out;
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& out_dir,
                            std::optional<std::uint64_t> seed_override) {
    ScenarioResult result;
    result.name = config.name;

    LinkConfig link_config = config.link_config;
    if (seed_override)
        link_config.rng_seed = *seed_override;
    validate_link_config(link_config);
    validate_spec(config.signal);

    fs::create_directories(out_dir);
    auto out_path = [&](const std::string& name) {
        return (fs::path(out_dir) / name).string();
    };

    const double period = period_of(config.signal);
    const SampledSignal sut = synthesize(config.signal, config.sample_rate_hz, 1);

    Spectrogram spec;
    double bin_hz = 0.0;
    json plan_meta;
    json pulse_meta;
    SfcwPlan plan = config.sfcw_plan;
    double reference_freq = 0.0;

    if (config.link == LinkKind::TimeDivision) {
        validate_plan(plan, period);
        reference_freq = config.reference_freq_hz
                             ? *config.reference_freq_hz
                             : measured_frequency(plan, 1, link_config);
        const RawTrace trace = run_time_division(sut, reference_freq, plan, link_config);
        const PulseDetection anchor = find_reference_pulse(
            trace, config.reference_min_height_ratio, config.reference_min_width_ratio);
        const SfcwFrame frame = extract_frame(trace, anchor);
        spec = segment_and_stack(frame, plan, link_config);
        bin_hz = plan.delta_step_hz;

        const PulseStats stats = pulse_fwhm_stats(frame, plan);
        pulse_meta = {{"median_fwhm_s", stats.median_fwhm_s},
                      {"pulse_count", stats.pulse_count}};
        result.metrics["pulse_median_fwhm_s"] = stats.median_fwhm_s;

        plan_meta = {{"kind", "sfcw"},
                     {"f_step1_hz", plan.f_step1_hz},
                     {"delta_step_hz", plan.delta_step_hz},
                     {"step_period_s", plan.step_period_s},
                     {"n_steps", plan.n_steps},
                     {"period_multiple_m", *plan.period_multiple_m},
                     {"measured_freqs_hz", trace.measured_freqs_hz}};
    } else {
        const SampledSignal span =
            config.n_periods > 1 ? tile_periodic(sut, config.n_periods) : sut;
        spec = run_parallel(span, config.branch_plan, link_config);
        normalize_global_max(spec);
        bin_hz = config.branch_plan.delta_f_hz;

        std::vector<double> freqs;
        for (std::size_t k = 0; k < config.branch_plan.n_branches; ++k)
            freqs.push_back(branch_frequency(config.branch_plan, k));
        plan_meta = {{"kind", "parallel"},
                     {"f_base_hz", config.branch_plan.f_base_hz},
                     {"delta_f_hz", config.branch_plan.delta_f_hz},
                     {"n_branches", config.branch_plan.n_branches},
                     {"direction",
                      config.branch_plan.direction == ShiftDirection::Up ? "up" : "down"},
                     {"branch_freqs_hz", freqs}};
    }

    const RidgeSeries ridge_series = ridge(spec, config.ridge_power_floor);
    const TruthComparison truth =
        compare_ridge_to_truth(ridge_series, config.signal, bin_hz);
    result.metrics["ridge_fraction_within_one_bin"] = truth.fraction_within_one_bin;
    result.metrics["ridge_rms_error_hz"] = truth.rms_error_hz;

    write_spectrogram_csv(spec, out_path(config.outputs.spectrogram_csv));
    result.artifacts.push_back(out_path(config.outputs.spectrogram_csv));
    write_spectrogram_pgm(spec, out_path(config.outputs.heatmap_image));
    result.artifacts.push_back(out_path(config.outputs.heatmap_image));
    write_ridge_csv(ridge_series, out_path(config.outputs.ridge_csv));
    result.artifacts.push_back(out_path(config.outputs.ridge_csv));

    json oracle_meta;
    if (config.oracle) {
        const Spectrogram reference_spec = stft(sut, *config.oracle);
        write_spectrogram_csv(reference_spec, out_path(config.outputs.oracle_csv));
        result.artifacts.push_back(out_path(config.outputs.oracle_csv));
        const RidgeSeries oracle_ridge = ridge(reference_spec, config.ridge_power_floor);
        const RidgeCompare cmp = compare_ridges(ridge_series, oracle_ridge);
        result.metrics["oracle_median_abs_err_hz"] = cmp.median_abs_err_hz;
        result.metrics["oracle_coverage_fraction"] = cmp.coverage_fraction;
        oracle_meta = {{"window_len_samples", config.oracle->window_len_samples},
                       {"hop_samples", config.oracle->hop_samples},
                       {"window_fn", config.oracle->window_fn == WindowFn::Hann
                                         ? "hann"
                                         : "rectangular"},
                       {"median_abs_err_hz", cmp.median_abs_err_hz},
                       {"coverage_fraction", cmp.coverage_fraction}};
    }

    // Assertions
    if (config.assertions.ridge_vs_truth) {
        const auto& a = *config.assertions.ridge_vs_truth;
        const RidgeSeries rr = ridge(spec, a.power_floor);
        const TruthComparison tc = compare_ridge_to_truth(rr, config.signal, bin_hz);
        AssertionResult ar;
        ar.name = "ridge_vs_truth";
        ar.passed = tc.fraction_within_one_bin >= a.min_fraction_within_one_bin;
        ar.detail = "fraction_within_one_bin=" + format_metric(tc.fraction_within_one_bin) +
                    " min=" + format_metric(a.min_fraction_within_one_bin);
        result.assertions.push_back(ar);
    }
    if (config.assertions.two_tone) {
        const auto& a = *config.assertions.two_tone;
        const TwoToneResult tt = two_tone_resolvability(spec, a.f_a_hz, a.f_b_hz);
        AssertionResult ar;
        ar.name = "two_tone";
        ar.passed = tt.resolved == a.expect_resolved;
        ar.detail = "valley_ratio=" + format_metric(tt.valley_ratio) +
                    " resolved=" + (tt.resolved ? "true" : "false");
        result.metrics["two_tone_valley_ratio"] = tt.valley_ratio;
        result.assertions.push_back(ar);
    }
    if (config.assertions.rms_ridge_error_max_hz) {
        AssertionResult ar;
        ar.name = "rms_ridge_error";
        ar.passed = truth.rms_error_hz <= *config.assertions.rms_ridge_error_max_hz;
        ar.detail = "rms_error_hz=" + format_metric(truth.rms_error_hz) +
                    " max=" + format_metric(*config.assertions.rms_ridge_error_max_hz);
        result.assertions.push_back(ar);
    }
    if (config.assertions.pulse_fwhm_s_range) {
        const auto& [lo, hi] = *config.assertions.pulse_fwhm_s_range;
        const double fwhm = result.metrics.count("pulse_median_fwhm_s")
                                ? result.metrics["pulse_median_fwhm_s"]
                                : 0.0;
        AssertionResult ar;
        ar.name = "pulse_fwhm";
        ar.passed = fwhm >= lo && fwhm <= hi;
        ar.detail = "median_fwhm_s=" + format_metric(fwhm) + " range=[" +
                    format_metric(lo) + "," + format_metric(hi) + "]";
        result.assertions.push_back(ar);
    }

    // Metadata records every resolved default: no hidden parameters.
    json meta;
    meta["name"] = config.name;
    meta["link"] = config.link == LinkKind::TimeDivision ? "time_division" : "parallel";
    meta["sample_rate_hz"] = config.sample_rate_hz;
    meta["signal"] = signal_to_json(config.signal);
    meta["signal_period_s"] = period;
    meta["link_config"] = {{"f_sbs_hz", link_config.f_sbs_hz},
                           {"f_pump_offset_hz", link_config.f_pump_offset_hz},
                           {"modulation_index", link_config.modulation_index},
                           {"gain_fwhm_hz", link_config.gain_fwhm_hz},
                           {"peak_gain_db", link_config.peak_gain_db},
                           {"detector_lpf_hz", link_config.resolved_detector_lpf_hz()},
                           {"output_rate_hz", link_config.resolved_output_rate_hz()},
                           {"gain_center_offset_hz", link_config.gain_center_offset_hz()},
                           {"noise_rms", link_config.noise_rms},
                           {"rng_seed", link_config.rng_seed}};
    meta["plan"] = plan_meta;
    if (config.link == LinkKind::TimeDivision) {
        meta["reference_freq_hz"] = reference_freq;
        meta["reference_min_height_ratio"] = config.reference_min_height_ratio;
        meta["reference_min_width_ratio"] = config.reference_min_width_ratio;
        meta["pulse_stats"] = pulse_meta;
    } else {
        meta["n_periods"] = config.n_periods;
    }
    meta["decimation_factor"] =
        decimation_factor(config.sample_rate_hz, link_config.resolved_output_rate_hz());
    meta["ridge_power_floor"] = config.ridge_power_floor;
    meta["normalization"] =
        spec.normalization == Normalization::GlobalMax ? "global_max" : "none";
    meta["peak_value"] = spec.peak_value;
    meta["oracle"] = config.oracle ? oracle_meta : json();
    json metrics = json::object();
    for (const auto& [key, value] : result.metrics)
        metrics[key] = value;
    meta["metrics"] = metrics;
    json assertion_meta = json::array();
    for (const auto& a : result.assertions)
        assertion_meta.push_back(
            {{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
    meta["assertions"] = assertion_meta;

    std::ofstream meta_out(out_path(config.outputs.metadata), std::ios::binary);
    if (!meta_out)
        throw Error(Errc::ConfigInvalid,
                    "cannot open for writing: " + out_path(config.outputs.metadata));
    meta_out << meta.dump(2) << '\n';
    result.artifacts.push_back(out_path(config.outputs.metadata));

    return result;
}

SuiteReport run_suite(const std::string& config_dir, const std::string& out_dir,
                      std::optional<std::uint64_t> seed_override) {
    std::vector<fs::path> configs;
    if (!fs::is_directory(config_dir))
        throw Error(Errc::ConfigInvalid, "not a directory: " + config_dir);
    for (const auto& entry : fs::directory_iterator(config_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            configs.push_back(entry.path());
    if (configs.empty())
        throw Error(Errc::ConfigInvalid, "no scenario configs in " + config_dir);
    std::sort(configs.begin(), configs.end());

    SuiteReport report;
    std::string text;
    for (const auto& path : configs) {
        const ScenarioConfig cfg = parse_scenario_file(path.string());
        ScenarioResult res =
            run_scenario(cfg, (fs::path(out_dir) / cfg.name).string(), seed_override);
        const bool ok = res.all_assertions_passed();
        if (!ok)
            ++report.failed;
        text += res.name + ": " + (ok ? "PASS" : "FAIL");
        for (const auto& [key, value] : res.metrics)
            text += " " + key + "=" + format_metric(value);
        for (const auto& a : res.assertions)
            if (!a.passed)
                text += " [" + a.name + ": " + a.detail + "]";
        text += "\n";
        report.results.push_back(std::move(res));
    }
    text += "suite: " + std::to_string(report.results.size()) + " scenarios, " +
            std::to_string(report.failed) + " failed\n";
    report.report_text = text;

    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "report.txt", std::ios::binary);
    out << text;
    return report;
}

} // namespace sbs
