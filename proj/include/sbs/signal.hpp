#pragma once

#include <cstddef>
#include <vector>

namespace sbs {

// Real-valued RF waveform on a uniform sample grid. Sample i sits at
// t0_s + i / sample_rate_hz. Amplitudes are dimensionless normalized drive.
struct SampledSignal {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;
    double t0_s = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
    double duration_s() const noexcept {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }
    double time_at(std::size_t i) const noexcept {
        return t0_s + static_cast<double>(i) / sample_rate_hz;
    }
};

// Pointwise sum; models the electrical coupler combining SUT and reference.
SampledSignal sum(const SampledSignal& a, const SampledSignal& b);

// Exact repetition of the input, back to back.
SampledSignal tile_periodic(const SampledSignal& signal, std::size_t repetitions);

SampledSignal scaled(const SampledSignal& s, double factor);

double peak_abs(const SampledSignal& s);
double energy(const SampledSignal& s);

} // namespace sbs
