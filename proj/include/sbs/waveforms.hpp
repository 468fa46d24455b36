#pragma once

#include "sbs/signal.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace sbs {

// Signal-under-test formats. All waveforms are unit peak amplitude; relative
// intensity enters downstream through the modulation index.

struct ToneSpec {
    double f_hz = 0.0;
    // Declared waveform period. Must hold an integer number of carrier
    // cycles so that it is a true period of the tone.
    double period_s = 0.0;
};

struct MultiToneSpec {
    std::vector<double> f_list_hz;
    double period_s = 0.0;
};

struct LfmSpec {
    double f_start_hz = 0.0;
    double f_end_hz = 0.0;
    double period_s = 0.0;
};

// Up-chirp and down-chirp over the same band and period, summed.
struct DualChirpLfmSpec {
    double f_start_hz = 0.0;
    double f_end_hz = 0.0;
    double period_s = 0.0;
};

// Frequency law f(t) = f_start + (f_end - f_start) * p(t/T), where p is a
// polynomial in u = t/T with ascending-power coefficients starting at u^1
// and p(1) = 1. Default {0, 1} is the quadratic sweep p(u) = u^2.
struct NlfmSpec {
    double f_start_hz = 0.0;
    double f_end_hz = 0.0;
    double period_s = 0.0;
    std::vector<double> shape_coeffs = {0.0, 1.0};
};

struct HopEntry {
    double start_s = 0.0;
    double f_hz = 0.0;
};

// Hop table must be sorted by start time, begin at t = 0, and cover
// [0, period_s). Boundaries are right-continuous.
struct FrequencyHoppingSpec {
    std::vector<HopEntry> hop_table;
    double period_s = 0.0;
};

struct StepFrequencySpec {
    double f_start_hz = 0.0;
    double f_step_hz = 0.0;
    double dwell_s = 0.0;
    std::size_t n_steps = 0;
};

using SignalSpec = std::variant<ToneSpec, MultiToneSpec, LfmSpec, DualChirpLfmSpec,
                                NlfmSpec, FrequencyHoppingSpec, StepFrequencySpec>;

// Throws InvalidSpec if the spec's fields are malformed.
void validate_spec(const SignalSpec& spec);

double period_of(const SignalSpec& spec);
double max_frequency_of(const SignalSpec& spec);

// Unit-peak waveform, phase-continuous within each period for chirps,
// exactly n_periods * period_s long. Requires sample_rate_hz > 2 * max
// instantaneous frequency (NyquistViolation otherwise).
SampledSignal synthesize(const SignalSpec& spec, double sample_rate_hz,
                         std::size_t n_periods);

// All frequency components active at time t in [0, period). Sorted,
// deduplicated; right-continuous at hop/step boundaries.
std::vector<double> instantaneous_frequency(const SignalSpec& spec, double t_s);

} // namespace sbs
