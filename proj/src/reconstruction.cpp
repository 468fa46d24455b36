#include "sbs/reconstruction.hpp"

#include "sbs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sbs {

std::vector<PulseDetection> detect_pulses(const std::vector<double>& data,
                                          double threshold_fraction) {
    std::vector<PulseDetection> pulses;
    const double peak = data.empty() ? 0.0 : *std::max_element(data.begin(), data.end());
    if (peak <= 0.0)
        return pulses;
    const double threshold = threshold_fraction * peak;

    std::size_t i = 0;
    while (i < data.size()) {
        if (data[i] < threshold) {
            ++i;
            continue;
        }
        PulseDetection p;
        p.start_index = i;
        p.center_index = i;
        p.height = data[i];
        while (i < data.size() && data[i] >= threshold) {
            if (data[i] > p.height) {
                p.height = data[i];
                p.center_index = i;
            }
            ++i;
        }
        p.width_samples = i - p.start_index;
        pulses.push_back(p);
    }
    return pulses;
}

namespace {

std::vector<double> baseline_subtracted(const RawTrace& trace) {
    std::vector<double> out(trace.detected.samples);
    const std::size_t step = trace.step_samples();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] -= trace.baseline.samples[i % step];
    return out;
}

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid) - 1, v.end());
        m = 0.5 * (m + v[mid - 1]);
    }
    return m;
}

} // namespace

PulseDetection find_reference_pulse(const RawTrace& trace, double min_height_ratio,
                                    double min_width_ratio) {
    if (trace.detected.size() == 0 || trace.step_samples() == 0)
        throw Error(Errc::NoReferenceFound, "empty trace");

    const std::vector<double> data = baseline_subtracted(trace);
    const auto pulses = detect_pulses(data, 0.25);
    if (pulses.empty())
        throw Error(Errc::NoReferenceFound, "no pulses above the detection floor");

    const double peak =
        std::max_element(pulses.begin(), pulses.end(), [](const auto& a, const auto& b) {
            return a.height < b.height;
        })->height;

    for (std::size_t i = 0; i < pulses.size(); ++i) {
        if (pulses[i].height < min_height_ratio * peak)
            continue;
        std::vector<double> other_widths;
        for (std::size_t j = 0; j < pulses.size(); ++j)
            if (j != i)
                other_widths.push_back(static_cast<double>(pulses[j].width_samples));
        if (!other_widths.empty() &&
            static_cast<double>(pulses[i].width_samples) <
                min_width_ratio * median(std::move(other_widths)))
            continue;
        return pulses[i];
    }
    throw Error(Errc::NoReferenceFound, "no pulse is both wide and high enough");
}

SfcwFrame extract_frame(const RawTrace& trace, const PulseDetection& anchor) {
    const std::size_t step = trace.step_samples();
    const std::size_t total = trace.plan.n_steps * step;
    const auto boundary_index = static_cast<std::size_t>(
        std::llround(static_cast<double>(anchor.start_index) / static_cast<double>(step)));
    const std::size_t begin = boundary_index * step;
    if (begin + total > trace.detected.size())
        throw Error(Errc::InsufficientData,
                    "less than one full scan follows the reference pulse");

    SfcwFrame frame;
    frame.signal.sample_rate_hz = trace.detected.sample_rate_hz;
    frame.signal.t0_s = trace.detected.time_at(begin);
    frame.signal.samples.assign(
        trace.detected.samples.begin() + static_cast<std::ptrdiff_t>(begin),
        trace.detected.samples.begin() + static_cast<std::ptrdiff_t>(begin + total));
    frame.first_step = (trace.start_step - 1 + boundary_index) % trace.plan.n_steps + 1;
    frame.baseline = trace.baseline;
    frame.reference_freq_hz = trace.reference_freq_hz;
    return frame;
}

Spectrogram segment_and_stack(const SfcwFrame& frame, const SfcwPlan& plan,
                              const LinkConfig& config) {
    validate_plan_fields(plan);
    if (frame.signal.size() == 0 || frame.signal.size() % plan.n_steps != 0)
        throw Error(Errc::LengthIndivisible, "frame length not divisible by n_steps");
    const std::size_t step = frame.signal.size() / plan.n_steps;
    if (frame.baseline.size() != step)
        throw Error(Errc::LengthMismatch, "baseline length does not match the step length");

    const std::size_t decim =
        decimation_factor(frame.signal.sample_rate_hz, config.resolved_output_rate_hz());

    // Segment i of the frame belongs to scan step (first_step - 1 + i) mod n.
    std::vector<std::pair<double, std::size_t>> rows; // (frequency, segment index)
    rows.reserve(plan.n_steps);
    for (std::size_t i = 0; i < plan.n_steps; ++i) {
        const std::size_t n = (frame.first_step - 1 + i) % plan.n_steps + 1;
        rows.emplace_back(measured_frequency(plan, n, config), i);
    }
    std::sort(rows.begin(), rows.end());

    const double ref_exclusion = 1.5 * config.gain_fwhm_hz;

    Spectrogram spec;
    for (std::size_t i = 0; i < step; i += decim)
        spec.time_axis_s.push_back(static_cast<double>(i) / frame.signal.sample_rate_hz);

    for (const auto& [freq, segment] : rows) {
        if (std::abs(freq - frame.reference_freq_hz) <= ref_exclusion)
            continue; // reference row removal
        std::vector<double> row;
        row.reserve(spec.time_axis_s.size());
        const std::size_t offset = segment * step;
        for (std::size_t i = 0; i < step; i += decim) {
            const double v =
                frame.signal.samples[offset + i] - frame.baseline.samples[i];
            row.push_back(std::max(0.0, v));
        }
        spec.freq_axis_hz.push_back(freq);
        spec.intensity.push_back(std::move(row));
    }

    normalize_global_max(spec);
    spec.check();
    return spec;
}

RidgeSeries ridge(const Spectrogram& spec, double power_floor) {
    RidgeSeries out;
    out.time_axis_s = spec.time_axis_s;
    out.freq_hz.assign(spec.n_time(), std::nullopt);
    for (std::size_t c = 0; c < spec.n_time(); ++c) {
        double best = -1.0;
        std::size_t best_row = 0;
        for (std::size_t r = 0; r < spec.n_freq(); ++r) {
            if (spec.intensity[r][c] > best) { // strict > keeps the lower-frequency tie
                best = spec.intensity[r][c];
                best_row = r;
            }
        }
        if (best >= power_floor && spec.n_freq() > 0)
            out.freq_hz[c] = spec.freq_axis_hz[best_row];
    }
    return out;
}

PulseStats pulse_fwhm_stats(const SfcwFrame& frame, const SfcwPlan& plan,
                            double min_height_fraction, double max_width_fraction_of_step) {
    PulseStats stats;
    if (frame.signal.size() == 0 || frame.signal.size() % plan.n_steps != 0)
        return stats;
    const std::size_t step = frame.signal.size() / plan.n_steps;
    const double fs = frame.signal.sample_rate_hz;

    std::vector<double> sub(frame.signal.samples);
    for (std::size_t i = 0; i < sub.size(); ++i)
        sub[i] -= frame.baseline.samples[i % step];
    const double global_max = *std::max_element(sub.begin(), sub.end());
    if (global_max <= 0.0)
        return stats;

    std::vector<double> widths;
    for (std::size_t s = 0; s < plan.n_steps; ++s) {
        const auto begin = sub.begin() + static_cast<std::ptrdiff_t>(s * step);
        const auto it = std::max_element(begin, begin + static_cast<std::ptrdiff_t>(step));
        const double h = *it;
        if (h < min_height_fraction * global_max)
            continue;
        const double half = 0.5 * h;
        const auto peak_idx = static_cast<std::size_t>(std::distance(begin, it));

        // Half-max crossings with linear interpolation, clipped to the step.
        double left = 0.0;
        for (std::size_t i = peak_idx; i-- > 0;) {
            if (begin[static_cast<std::ptrdiff_t>(i)] < half) {
                const double lo = begin[static_cast<std::ptrdiff_t>(i)];
                const double hi = begin[static_cast<std::ptrdiff_t>(i + 1)];
                left = static_cast<double>(i) + (half - lo) / (hi - lo);
                break;
            }
        }
        double right = static_cast<double>(step - 1);
        for (std::size_t i = peak_idx + 1; i < step; ++i) {
            if (begin[static_cast<std::ptrdiff_t>(i)] < half) {
                const double lo = begin[static_cast<std::ptrdiff_t>(i)];
                const double hi = begin[static_cast<std::ptrdiff_t>(i - 1)];
                right = static_cast<double>(i) - (half - lo) / (hi - lo);
                break;
            }
        }
        const double width = (right - left) / fs;
        if (width <= max_width_fraction_of_step * static_cast<double>(step) / fs)
            widths.push_back(width);
    }
    if (widths.empty())
        return stats;
    stats.pulse_count = widths.size();
    stats.median_fwhm_s = median(std::move(widths));
    return stats;
}

} // namespace sbs
