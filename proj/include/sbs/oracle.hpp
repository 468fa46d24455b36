#pragma once

#include "sbs/reconstruction.hpp"
#include "sbs/signal.hpp"
#include "sbs/spectrogram.hpp"
#include "sbs/timedivision.hpp"

#include <cstddef>
#include <vector>

namespace sbs {

enum class WindowFn { Rectangular, Hann };

struct StftParams {
    std::size_t window_len_samples = 512;
    std::size_t hop_samples = 128;
    WindowFn window_fn = WindowFn::Hann;
};

// Magnitude-squared windowed transform of a real signal, one-sided frequency
// axis, intensities scaled by 1/N. Normalized to global max with the raw
// peak preserved in peak_value.
Spectrogram stft(const SampledSignal& signal, const StftParams& params);

struct TwoToneResult {
    bool resolved = false;
    double valley_ratio = 1.0;
};

// Two-point resolution test: per time column, the minimum intensity between
// the rows nearest f_a and f_b divided by the lesser of the two row peaks,
// averaged over columns. Adjacent or identical rows give ratio 1 (the lines
// fit together). Resolved iff the average ratio < 0.5 (-3 dB valley).
TwoToneResult two_tone_resolvability(const Spectrogram& spec, double f_a_hz, double f_b_hz);

struct RidgeCompare {
    double median_abs_err_hz = 0.0;
    double coverage_fraction = 0.0;
};

// Median |frequency difference| over columns where both ridges are present,
// after nearest-neighbor resampling of b onto a's grid over the common time
// support. coverage = fraction of overlapping columns where both present.
RidgeCompare compare_ridges(const RidgeSeries& a, const RidgeSeries& b);

// Smallest separation in `search_grid_hz` whose two-tone scan (tones at
// base_tone_hz and base_tone_hz + s, full time-division pipeline) resolves,
// found by binary search over the sorted grid. NoneResolved if none does.
double min_resolvable_separation(const LinkConfig& config, const SfcwPlan& plan_template,
                                 double sample_rate_hz, double base_tone_hz,
                                 std::vector<double> search_grid_hz);

// Normalized L-infinity distance over the cells of the common axis grid
// (axes paired within small relative tolerance); both matrices are scaled
// to unit maximum first. EmptyOverlap when the grids share nothing.
double normalized_linf_distance(const Spectrogram& a, const Spectrogram& b);

} // namespace sbs
