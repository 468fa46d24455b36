#include "sbs/waveforms.hpp"

#include "sbs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sbs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool near_integer(double x, double tol = 1e-6) {
    return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

void require_cycles(double f_hz, double period_s, const char* what) {
    if (f_hz > 0.0 && !near_integer(f_hz * period_s))
        throw Error(Errc::InvalidSpec,
                    std::string(what) + " frequency does not complete an integer "
                                        "number of cycles in the declared period");
}

double nlfm_shape(const NlfmSpec& s, double u) {
    double p = 0.0;
    double pw = u;
    for (double c : s.shape_coeffs) {
        p += c * pw;
        pw *= u;
    }
    return p;
}

// Integral of the shape polynomial from 0 to u, needed for the phase law.
double nlfm_shape_integral(const NlfmSpec& s, double u) {
    double acc = 0.0;
    double pw = u * u;
    for (std::size_t i = 0; i < s.shape_coeffs.size(); ++i) {
        acc += s.shape_coeffs[i] * pw / static_cast<double>(i + 2);
        pw *= u;
    }
    return acc;
}

struct Validator {
    void operator()(const ToneSpec& s) const {
        if (s.f_hz < 0.0)
            throw Error(Errc::InvalidSpec, "tone frequency must be >= 0");
        if (s.period_s <= 0.0)
            throw Error(Errc::InvalidSpec, "tone period must be > 0");
        require_cycles(s.f_hz, s.period_s, "tone");
    }
    void operator()(const MultiToneSpec& s) const {
        if (s.f_list_hz.empty())
            throw Error(Errc::InvalidSpec, "multi-tone needs at least one frequency");
        if (s.period_s <= 0.0)
            throw Error(Errc::InvalidSpec, "multi-tone period must be > 0");
        for (double f : s.f_list_hz) {
            if (f < 0.0)
                throw Error(Errc::InvalidSpec, "multi-tone frequency must be >= 0");
            require_cycles(f, s.period_s, "multi-tone");
        }
    }
    void operator()(const LfmSpec& s) const {
        if (s.f_start_hz < 0.0 || s.f_end_hz < 0.0)
            throw Error(Errc::InvalidSpec, "chirp frequencies must be >= 0");
        if (s.period_s <= 0.0)
            throw Error(Errc::InvalidSpec, "chirp period must be > 0");
    }
    void operator()(const DualChirpLfmSpec& s) const {
        (*this)(LfmSpec{s.f_start_hz, s.f_end_hz, s.period_s});
    }
    void operator()(const NlfmSpec& s) const {
        (*this)(LfmSpec{s.f_start_hz, s.f_end_hz, s.period_s});
        if (s.shape_coeffs.empty())
            throw Error(Errc::InvalidSpec, "NLFM shape polynomial is empty");
        double p1 = 0.0;
        for (double c : s.shape_coeffs)
            p1 += c;
        if (std::abs(p1 - 1.0) > 1e-6)
            throw Error(Errc::InvalidSpec, "NLFM shape polynomial must satisfy p(1) = 1");
        // The frequency law must stay non-negative over the period.
        for (int i = 0; i <= 1000; ++i) {
            const double u = static_cast<double>(i) / 1000.0;
            if (s.f_start_hz + (s.f_end_hz - s.f_start_hz) * nlfm_shape(s, u) < 0.0)
                throw Error(Errc::InvalidSpec, "NLFM frequency law goes negative");
        }
    }
    void operator()(const FrequencyHoppingSpec& s) const {
        if (s.period_s <= 0.0)
            throw Error(Errc::InvalidSpec, "hop period must be > 0");
        if (s.hop_table.empty())
            throw Error(Errc::InvalidSpec, "hop table is empty");
        if (s.hop_table.front().start_s != 0.0)
            throw Error(Errc::InvalidSpec, "hop table must start at t = 0");
        double prev = -1.0;
        for (const auto& hop : s.hop_table) {
            if (hop.f_hz < 0.0)
                throw Error(Errc::InvalidSpec, "hop frequency must be >= 0");
            if (hop.start_s <= prev)
                throw Error(Errc::InvalidSpec, "hop table not strictly sorted by start time");
            if (hop.start_s >= s.period_s)
                throw Error(Errc::InvalidSpec, "hop start beyond the period");
            prev = hop.start_s;
        }
    }
    void operator()(const StepFrequencySpec& s) const {
        if (s.n_steps == 0)
            throw Error(Errc::InvalidSpec, "step-frequency needs at least one step");
        if (s.dwell_s <= 0.0)
            throw Error(Errc::InvalidSpec, "step dwell must be > 0");
        for (std::size_t i = 0; i < s.n_steps; ++i)
            if (s.f_start_hz + static_cast<double>(i) * s.f_step_hz < 0.0)
                throw Error(Errc::InvalidSpec, "step frequency goes negative");
    }
};

// Phase (radians) at time t within one period, continuous in t for chirps.
struct PhaseAt {
    double t;
    double operator()(const LfmSpec& s) const {
        const double k = (s.f_end_hz - s.f_start_hz) / s.period_s;
        return kTwoPi * (s.f_start_hz * t + 0.5 * k * t * t);
    }
    double operator()(const NlfmSpec& s) const {
        const double u = t / s.period_s;
        return kTwoPi * (s.f_start_hz * t +
                         (s.f_end_hz - s.f_start_hz) * s.period_s * nlfm_shape_integral(s, u));
    }
};

} // namespace

void validate_spec(const SignalSpec& spec) {
    std::visit(Validator{}, spec);
}

double period_of(const SignalSpec& spec) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StepFrequencySpec>)
                return s.dwell_s * static_cast<double>(s.n_steps);
            else
                return s.period_s;
        },
        spec);
}

double max_frequency_of(const SignalSpec& spec) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ToneSpec>) {
                return s.f_hz;
            } else if constexpr (std::is_same_v<T, MultiToneSpec>) {
                return *std::max_element(s.f_list_hz.begin(), s.f_list_hz.end());
            } else if constexpr (std::is_same_v<T, LfmSpec> ||
                                 std::is_same_v<T, DualChirpLfmSpec>) {
                return std::max(s.f_start_hz, s.f_end_hz);
            } else if constexpr (std::is_same_v<T, NlfmSpec>) {
                double fmax = 0.0;
                for (int i = 0; i <= 1000; ++i) {
                    const double u = static_cast<double>(i) / 1000.0;
                    fmax = std::max(fmax, s.f_start_hz +
                                              (s.f_end_hz - s.f_start_hz) * nlfm_shape(s, u));
                }
                return fmax;
            } else if constexpr (std::is_same_v<T, FrequencyHoppingSpec>) {
                double fmax = 0.0;
                for (const auto& hop : s.hop_table)
                    fmax = std::max(fmax, hop.f_hz);
                return fmax;
            } else {
                double fmax = 0.0;
                for (std::size_t i = 0; i < s.n_steps; ++i)
                    fmax = std::max(fmax, s.f_start_hz + static_cast<double>(i) * s.f_step_hz);
                return fmax;
            }
        },
        spec);
}

SampledSignal synthesize(const SignalSpec& spec, double sample_rate_hz,
                         std::size_t n_periods) {
    validate_spec(spec);
    if (sample_rate_hz <= 0.0)
        throw Error(Errc::InvalidSpec, "sample rate must be > 0");
    if (n_periods == 0)
        throw Error(Errc::InvalidSpec, "n_periods must be positive");
    if (sample_rate_hz <= 2.0 * max_frequency_of(spec))
        throw Error(Errc::NyquistViolation, "sample rate below 2x max instantaneous frequency");

    const double period = period_of(spec);
    const double exact = period * sample_rate_hz;
    if (!near_integer(exact))
        throw Error(Errc::InvalidSpec, "period is not an integer number of samples");
    const auto samples_per_period = static_cast<std::size_t>(std::llround(exact));
    if (samples_per_period == 0)
        throw Error(Errc::InvalidSpec, "period shorter than one sample");

    SampledSignal one;
    one.sample_rate_hz = sample_rate_hz;
    one.t0_s = 0.0;
    one.samples.resize(samples_per_period);

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ToneSpec>) {
                for (std::size_t i = 0; i < samples_per_period; ++i)
                    one.samples[i] = std::cos(kTwoPi * s.f_hz *
                                              (static_cast<double>(i) / sample_rate_hz));
            } else if constexpr (std::is_same_v<T, MultiToneSpec>) {
                const double amp = 1.0 / static_cast<double>(s.f_list_hz.size());
                for (std::size_t i = 0; i < samples_per_period; ++i) {
                    const double t = static_cast<double>(i) / sample_rate_hz;
                    double v = 0.0;
                    for (double f : s.f_list_hz)
                        v += std::cos(kTwoPi * f * t);
                    one.samples[i] = amp * v;
                }
            } else if constexpr (std::is_same_v<T, LfmSpec>) {
                for (std::size_t i = 0; i < samples_per_period; ++i) {
                    const double t = static_cast<double>(i) / sample_rate_hz;
                    one.samples[i] = std::cos(PhaseAt{t}(s));
                }
            } else if constexpr (std::is_same_v<T, DualChirpLfmSpec>) {
                const LfmSpec up{s.f_start_hz, s.f_end_hz, s.period_s};
                const LfmSpec down{s.f_end_hz, s.f_start_hz, s.period_s};
                for (std::size_t i = 0; i < samples_per_period; ++i) {
                    const double t = static_cast<double>(i) / sample_rate_hz;
                    one.samples[i] = 0.5 * (std::cos(PhaseAt{t}(up)) + std::cos(PhaseAt{t}(down)));
                }
            } else if constexpr (std::is_same_v<T, NlfmSpec>) {
                for (std::size_t i = 0; i < samples_per_period; ++i) {
                    const double t = static_cast<double>(i) / sample_rate_hz;
                    one.samples[i] = std::cos(PhaseAt{t}(s));
                }
            } else if constexpr (std::is_same_v<T, FrequencyHoppingSpec>) {
                // Phase accumulates across hop boundaries so the waveform has
                // no amplitude discontinuities inside the period.
                std::vector<double> phase0(s.hop_table.size(), 0.0);
                for (std::size_t h = 1; h < s.hop_table.size(); ++h) {
                    const auto& prev = s.hop_table[h - 1];
                    phase0[h] = phase0[h - 1] +
                                kTwoPi * prev.f_hz * (s.hop_table[h].start_s - prev.start_s);
                }
                std::size_t h = 0;
                for (std::size_t i = 0; i < samples_per_period; ++i) {
                    const double t = static_cast<double>(i) / sample_rate_hz;
                    while (h + 1 < s.hop_table.size() && t >= s.hop_table[h + 1].start_s)
                        ++h;
                    one.samples[i] = std::cos(phase0[h] +
                                              kTwoPi * s.hop_table[h].f_hz *
                                                  (t - s.hop_table[h].start_s));
                }
            } else {
                double phase0 = 0.0;
                std::size_t i = 0;
                for (std::size_t step = 0; step < s.n_steps; ++step) {
                    const double f = s.f_start_hz + static_cast<double>(step) * s.f_step_hz;
                    const double t_start = static_cast<double>(step) * s.dwell_s;
                    const auto i_end = static_cast<std::size_t>(
                        std::llround(static_cast<double>(step + 1) * s.dwell_s * sample_rate_hz));
                    for (; i < std::min(i_end, samples_per_period); ++i) {
                        const double t = static_cast<double>(i) / sample_rate_hz;
                        one.samples[i] = std::cos(phase0 + kTwoPi * f * (t - t_start));
                    }
                    phase0 += kTwoPi * f * s.dwell_s;
                }
            }
        },
        spec);

    return n_periods == 1 ? one : tile_periodic(one, n_periods);
}

std::vector<double> instantaneous_frequency(const SignalSpec& spec, double t_s) {
    validate_spec(spec);
    const double period = period_of(spec);
    if (t_s < 0.0 || t_s >= period)
        throw Error(Errc::OutOfRange, "time outside one period");

    std::vector<double> freqs = std::visit(
        [&](const auto& s) -> std::vector<double> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ToneSpec>) {
                return {s.f_hz};
            } else if constexpr (std::is_same_v<T, MultiToneSpec>) {
                return s.f_list_hz;
            } else if constexpr (std::is_same_v<T, LfmSpec>) {
                return {s.f_start_hz + (s.f_end_hz - s.f_start_hz) * t_s / s.period_s};
            } else if constexpr (std::is_same_v<T, DualChirpLfmSpec>) {
                const double up = s.f_start_hz + (s.f_end_hz - s.f_start_hz) * t_s / s.period_s;
                const double down = s.f_end_hz + (s.f_start_hz - s.f_end_hz) * t_s / s.period_s;
                return {up, down};
            } else if constexpr (std::is_same_v<T, NlfmSpec>) {
                return {s.f_start_hz +
                        (s.f_end_hz - s.f_start_hz) * nlfm_shape(s, t_s / s.period_s)};
            } else if constexpr (std::is_same_v<T, FrequencyHoppingSpec>) {
                std::size_t h = 0;
                while (h + 1 < s.hop_table.size() && t_s >= s.hop_table[h + 1].start_s)
                    ++h;
                return {s.hop_table[h].f_hz};
            } else {
                const auto step = std::min<std::size_t>(
                    static_cast<std::size_t>(t_s / s.dwell_s), s.n_steps - 1);
                return {s.f_start_hz + static_cast<double>(step) * s.f_step_hz};
            }
        },
        spec);

    std::sort(freqs.begin(), freqs.end());
    // Collapse components that coincide (dual chirps crossing at midpoint).
    auto last = std::unique(freqs.begin(), freqs.end(), [](double a, double b) {
        return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a));
    });
    freqs.erase(last, freqs.end());
    return freqs;
}

} // namespace sbs
