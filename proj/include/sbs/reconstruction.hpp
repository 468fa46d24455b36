#pragma once

#include "sbs/spectrogram.hpp"
#include "sbs/timedivision.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sbs {

struct PulseDetection {
    std::size_t center_index = 0; // sample of maximum height
    std::size_t width_samples = 0;
    double height = 0.0;
    std::size_t start_index = 0; // first sample of the above-threshold region
};

// All contiguous regions of `data` above threshold_fraction * max(data).
std::vector<PulseDetection> detect_pulses(const std::vector<double>& data,
                                          double threshold_fraction);

// Step 1 of the data processing: locate the wide and high reference pulse.
// The trace baseline is subtracted before thresholding. A pulse qualifies
// when its height is at least min_height_ratio * global max and its width is
// at least min_width_ratio * the median width of the other detected pulses
// (the width test is vacuous when there are no peers). Earliest qualifying
// pulse wins; NoReferenceFound if none does.
PulseDetection find_reference_pulse(const RawTrace& trace, double min_height_ratio = 0.5,
                                    double min_width_ratio = 2.0);

// One full SFCW scan extracted from a raw trace, annotated with the scan
// step its first segment belongs to plus the bookkeeping reconstruction
// needs downstream.
struct SfcwFrame {
    SampledSignal signal;
    std::size_t first_step = 1; // 1-based step index of the first segment
    SampledSignal baseline;
    double reference_freq_hz = 0.0;
};

// Step 2: exactly n_steps * step_period of samples starting at the step
// boundary nearest the anchor pulse's start. InsufficientData if less than
// one full scan follows that boundary.
SfcwFrame extract_frame(const RawTrace& trace, const PulseDetection& anchor);

// Steps 3-4: segment the frame into steps, subtract the baseline, decimate
// to the configured output rate, order rows by mapped frequency (scans that
// wrap around the step sequence are reordered), drop the rows within
// 1.5*Gamma of the reference frequency, and normalize to the global max.
Spectrogram segment_and_stack(const SfcwFrame& frame, const SfcwPlan& plan,
                              const LinkConfig& config);

struct RidgeSeries {
    std::vector<double> time_axis_s;
    std::vector<std::optional<double>> freq_hz; // absent below the power floor
};

// Per time column, the frequency of maximum intensity when that maximum
// reaches power_floor (same units as the matrix); ties break toward the
// lower frequency.
RidgeSeries ridge(const Spectrogram& spec, double power_floor);

struct PulseStats {
    double median_fwhm_s = 0.0;
    std::size_t pulse_count = 0;
};

// Median full width at half maximum over the per-step pulses of a frame
// (baseline subtracted, half-max crossings linearly interpolated). Step-wide
// plateaus -- reference steps, tone SUTs -- are excluded by the width cap.
PulseStats pulse_fwhm_stats(const SfcwFrame& frame, const SfcwPlan& plan,
                            double min_height_fraction = 0.2,
                            double max_width_fraction_of_step = 0.5);

} // namespace sbs
