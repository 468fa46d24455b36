#include "sbs/parallel.hpp"

#include "sbs/errors.hpp"

#include <algorithm>
#include <numeric>

namespace sbs {

void validate_branch_plan(const BranchPlan& plan) {
    if (plan.delta_f_hz <= 0.0)
        throw Error(Errc::ConfigInvalid, "delta_f_hz must be > 0");
    if (plan.n_branches == 0)
        throw Error(Errc::ConfigInvalid, "n_branches must be >= 1");
}

double branch_frequency(const BranchPlan& plan, std::size_t k) {
    if (k >= plan.n_branches)
        throw Error(Errc::IndexOutOfRange, "branch index outside 0..n_branches-1");
    const double offset = static_cast<double>(k) * plan.delta_f_hz;
    return plan.direction == ShiftDirection::Up ? plan.f_base_hz + offset
                                                : plan.f_base_hz - offset;
}

Spectrogram run_parallel(const SampledSignal& sut, const BranchPlan& plan,
                         const LinkConfig& config) {
    validate_branch_plan(plan);
    validate_link_config(config);
    if (sut.size() == 0)
        throw Error(Errc::LengthMismatch, "empty SUT");

    const SbsGainProfile profile = config.gain_profile();
    const std::size_t decim =
        decimation_factor(sut.sample_rate_hz, config.resolved_output_rate_hz());

    std::vector<std::size_t> order(plan.n_branches);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return branch_frequency(plan, a) < branch_frequency(plan, b);
    });

    Spectrogram spec;
    for (std::size_t i = 0; i < sut.size(); i += decim)
        spec.time_axis_s.push_back(sut.t0_s + static_cast<double>(i) / sut.sample_rate_hz);

    spec.intensity.resize(plan.n_branches);
    spec.freq_axis_hz.resize(plan.n_branches);
    for (std::size_t row = 0; row < plan.n_branches; ++row) {
        const std::size_t k = order[row];
        const double f_k = branch_frequency(plan, k);
        if (f_k <= 0.0)
            throw Error(Errc::ConfigInvalid, "branch frequency must be > 0");
        LinkConfig branch_config = config;
        branch_config.rng_seed = mix_seed(config.rng_seed, k);
        // Carrier shift that puts frequency f_k onto the fixed gain line.
        const double down_shift = f_k - config.gain_center_offset_hz();
        const SampledSignal detected =
            detect_shifted_probe(sut, down_shift, profile, branch_config);

        spec.freq_axis_hz[row] = f_k;
        auto& out_row = spec.intensity[row];
        out_row.reserve(spec.time_axis_s.size());
        // Clamp away low-pass ringing so intensities stay non-negative.
        for (std::size_t i = 0; i < detected.size(); i += decim)
            out_row.push_back(std::max(0.0, detected.samples[i]));
    }
    spec.peak_value = spec.max_intensity();
    spec.check();
    return spec;
}

} // namespace sbs
