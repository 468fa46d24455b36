#include "sbs/timedivision.hpp"

#include "sbs/errors.hpp"
#include "sbs/waveforms.hpp"

#include <cmath>

namespace sbs {

void validate_plan_fields(const SfcwPlan& plan) {
    if (plan.f_step1_hz <= 0.0)
        throw Error(Errc::ConfigInvalid, "f_step1_hz must be > 0");
    if (plan.delta_step_hz <= 0.0)
        throw Error(Errc::ConfigInvalid, "delta_step_hz must be > 0");
    if (plan.step_period_s <= 0.0)
        throw Error(Errc::ConfigInvalid, "step_period_s must be > 0");
    if (plan.n_steps == 0)
        throw Error(Errc::ConfigInvalid, "n_steps must be >= 1");
}

std::size_t validate_plan(SfcwPlan& plan, double sut_period_s) {
    validate_plan_fields(plan);
    if (sut_period_s <= 0.0)
        throw Error(Errc::ConfigInvalid, "SUT period must be > 0");
    const double ratio = plan.step_period_s / sut_period_s;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
        throw Error(Errc::PeriodMismatch,
                    "step period is not an integer multiple of the SUT period");
    plan.period_multiple_m = static_cast<std::size_t>(rounded);
    return *plan.period_multiple_m;
}

double measured_frequency(const SfcwPlan& plan, std::size_t n, const LinkConfig& config) {
    if (n < 1 || n > plan.n_steps)
        throw Error(Errc::IndexOutOfRange, "step index outside 1..n_steps");
    return plan.step_frequency_hz(n) + config.gain_center_offset_hz();
}

RawTrace run_time_division(const SampledSignal& sut, double reference_freq_hz,
                           const SfcwPlan& plan, const LinkConfig& config) {
    validate_plan_fields(plan);
    validate_link_config(config);
    if (!plan.period_multiple_m)
        throw Error(Errc::PlanNotValidated, "call validate_plan before running the scan");
    const std::size_t m = *plan.period_multiple_m;

    const double fs = sut.sample_rate_hz;
    const double exact_step = plan.step_period_s * fs;
    const auto step_samples = static_cast<std::size_t>(std::llround(exact_step));
    if (std::abs(exact_step - static_cast<double>(step_samples)) > 1e-6)
        throw Error(Errc::ConfigInvalid, "step period is not an integer number of samples");
    if (sut.size() * m != step_samples)
        throw Error(Errc::PeriodMismatch,
                    "SUT samples times m do not fill the step period exactly");
    if (reference_freq_hz <= 0.0)
        throw Error(Errc::ConfigInvalid, "reference frequency must be > 0");

    // Reference tone, 2x the SUT peak, covering one step period. The tone
    // spec validation guarantees it is genuinely T_step-periodic.
    const double sut_peak = peak_abs(sut);
    const double ref_amplitude = sut_peak > 0.0 ? 2.0 * sut_peak : 1.0;
    SampledSignal reference =
        scaled(synthesize(ToneSpec{reference_freq_hz, plan.step_period_s}, fs, 1),
               ref_amplitude);

    SampledSignal sut_tiled = tile_periodic(sut, m);
    sut_tiled.t0_s = 0.0;
    reference.t0_s = 0.0;
    const SampledSignal drive = sum(sut_tiled, reference);

    const SbsGainProfile profile = config.gain_profile();

    RawTrace trace;
    trace.plan = plan;
    trace.reference_freq_hz = reference_freq_hz;
    trace.baseline = detect_baseline(drive, config);
    trace.detected.sample_rate_hz = fs;
    trace.detected.t0_s = 0.0;
    trace.detected.samples.resize(step_samples * plan.n_steps);
    trace.measured_freqs_hz.resize(plan.n_steps);

    for (std::size_t n = 1; n <= plan.n_steps; ++n) {
        trace.measured_freqs_hz[n - 1] = measured_frequency(plan, n, config);
        LinkConfig step_config = config;
        step_config.rng_seed = mix_seed(config.rng_seed, n);
        const SampledSignal detected =
            detect_shifted_probe(drive, plan.step_frequency_hz(n), profile, step_config);
        std::copy(detected.samples.begin(), detected.samples.end(),
                  trace.detected.samples.begin() +
                      static_cast<std::ptrdiff_t>((n - 1) * step_samples));
    }
    return trace;
}

} // namespace sbs
