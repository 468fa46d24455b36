#include "sbs/signal.hpp"

#include "sbs/errors.hpp"

#include <cmath>

namespace sbs {

namespace {

void require_compatible(const SampledSignal& a, const SampledSignal& b) {
    if (a.sample_rate_hz != b.sample_rate_hz)
        throw Error(Errc::RateMismatch, "signals have different sample rates");
    if (a.t0_s != b.t0_s)
        throw Error(Errc::StartTimeMismatch, "signals have different start times");
    if (a.size() != b.size())
        throw Error(Errc::LengthMismatch, "signals have different lengths");
}

} // namespace

SampledSignal sum(const SampledSignal& a, const SampledSignal& b) {
    require_compatible(a, b);
    SampledSignal out = a;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] += b.samples[i];
    return out;
}

SampledSignal tile_periodic(const SampledSignal& signal, std::size_t repetitions) {
    if (repetitions == 0)
        throw Error(Errc::OutOfRange, "repetitions must be positive");
    SampledSignal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.t0_s = signal.t0_s;
    out.samples.reserve(signal.size() * repetitions);
    for (std::size_t r = 0; r < repetitions; ++r)
        out.samples.insert(out.samples.end(), signal.samples.begin(), signal.samples.end());
    return out;
}

SampledSignal scaled(const SampledSignal& s, double factor) {
    SampledSignal out = s;
    for (double& v : out.samples)
        v *= factor;
    return out;
}

double peak_abs(const SampledSignal& s) {
    double peak = 0.0;
    for (double v : s.samples)
        peak = std::max(peak, std::abs(v));
    return peak;
}

double energy(const SampledSignal& s) {
    double acc = 0.0;
    for (double v : s.samples)
        acc += v * v;
    return acc;
}

} // namespace sbs
