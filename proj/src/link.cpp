#include "sbs/link.hpp"

#include "sbs/errors.hpp"
#include "sbs/fft.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sbs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Zero-phase raised-cosine low-pass window: unity below 0.9*fc, zero above
// 1.1*fc, cosine-squared taper in between.
double lowpass_window(double f_hz, double cutoff_hz) {
    const double a = std::abs(f_hz) / cutoff_hz;
    if (a <= 0.9)
        return 1.0;
    if (a >= 1.1)
        return 0.0;
    const double x = (a - 0.9) / 0.2;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * x));
}

} // namespace

void validate_link_config(const LinkConfig& config) {
    if (config.modulation_index <= 0.0 || config.modulation_index > 1.0)
        throw Error(Errc::ConfigInvalid, "modulation_index must be in (0, 1]");
    if (config.gain_fwhm_hz <= 0.0)
        throw Error(Errc::ConfigInvalid, "gain_fwhm_hz must be > 0");
    if (config.peak_gain_db <= 0.0)
        throw Error(Errc::ConfigInvalid, "peak_gain_db must be > 0");
    if (config.noise_rms < 0.0)
        throw Error(Errc::ConfigInvalid, "noise_rms must be >= 0");
}

ComplexEnvelope make_unit_carrier(std::size_t n_samples, double sample_rate_hz) {
    ComplexEnvelope env;
    env.sample_rate_hz = sample_rate_hz;
    env.carrier_offset_hz = 0.0;
    env.samples.assign(n_samples, {1.0, 0.0});
    return env;
}

ComplexEnvelope modulate_cs_dsb(const ComplexEnvelope& carrier, const SampledSignal& drive,
                                double modulation_index) {
    if (carrier.sample_rate_hz != drive.sample_rate_hz)
        throw Error(Errc::RateMismatch, "carrier and drive sample rates differ");
    if (carrier.size() != drive.size())
        throw Error(Errc::LengthMismatch, "carrier and drive lengths differ");
    if (modulation_index <= 0.0 || modulation_index > 1.0)
        throw Error(Errc::ConfigInvalid, "modulation_index must be in (0, 1]");

    const double peak = peak_abs(drive);
    const double scale = peak > 0.0 ? modulation_index * std::numbers::pi / 2.0 / peak : 0.0;

    ComplexEnvelope out = carrier;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] *= std::sin(scale * drive.samples[i]);
    return out;
}

ComplexEnvelope shift_cs_ssb(const ComplexEnvelope& field, double shift_hz,
                             ShiftDirection direction) {
    if (shift_hz < 0.0)
        throw Error(Errc::ConfigInvalid, "shift_hz must be >= 0");
    const double signed_shift = direction == ShiftDirection::Up ? shift_hz : -shift_hz;
    const double new_offset = field.carrier_offset_hz + signed_shift;
    if (std::abs(new_offset) > field.sample_rate_hz / 2.0)
        throw Error(Errc::NyquistViolation, "shifted carrier leaves the Nyquist band");

    ComplexEnvelope out = field;
    out.carrier_offset_hz = new_offset;
    const double w = kTwoPi * signed_shift / field.sample_rate_hz;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] *= std::polar(1.0, w * static_cast<double>(i));
    return out;
}

std::complex<double> sbs_gain_response(const SbsGainProfile& profile, double detuning_hz) {
    const double g = std::log(std::pow(10.0, profile.peak_gain_db / 10.0));
    const std::complex<double> denom(1.0, 2.0 * detuning_hz / profile.fwhm_hz);
    return std::exp(std::complex<double>(g / 2.0, 0.0) / denom);
}

ComplexEnvelope apply_sbs(const ComplexEnvelope& probe, const SbsGainProfile& profile) {
    if (std::abs(profile.center_offset_hz) >= probe.sample_rate_hz / 2.0)
        throw Error(Errc::NyquistViolation, "gain center outside the probe Nyquist band");

    ComplexEnvelope out = probe;
    fft::forward_inplace(out.samples);
    const std::size_t n = out.samples.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double f = fft::bin_frequency(k, n, probe.sample_rate_hz);
        out.samples[k] *= sbs_gain_response(profile, f - profile.center_offset_hz);
    }
    fft::inverse_inplace(out.samples);
    return out;
}

SampledSignal photodetect(const ComplexEnvelope& field, const LinkConfig& config) {
    const double cutoff = config.resolved_detector_lpf_hz();
    if (cutoff >= field.sample_rate_hz / 2.0)
        throw Error(Errc::ConfigInvalid, "detector LPF cutoff must be below Nyquist");

    const std::size_t n = field.size();
    std::vector<std::complex<double>> work(n);
    for (std::size_t i = 0; i < n; ++i)
        work[i] = std::norm(field.samples[i]);

    fft::forward_inplace(work);
    for (std::size_t k = 0; k < n; ++k)
        work[k] *= lowpass_window(fft::bin_frequency(k, n, field.sample_rate_hz), cutoff);
    fft::inverse_inplace(work);

    SampledSignal out;
    out.sample_rate_hz = field.sample_rate_hz;
    out.t0_s = 0.0;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = work[i].real();

    if (config.noise_rms > 0.0) {
        // Box-Muller on the standard mt19937_64 stream; deterministic for a
        // given seed independent of library normal_distribution details.
        std::mt19937_64 rng(config.rng_seed);
        auto uniform = [&rng]() {
            return (static_cast<double>(rng() >> 11) + 1.0) / 9007199254740993.0;
        };
        for (std::size_t i = 0; i < n; ++i) {
            const double u1 = uniform();
            const double u2 = uniform();
            out.samples[i] += config.noise_rms *
                              std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
        }
    }
    return out;
}

SampledSignal detect_shifted_probe(const SampledSignal& drive, double down_shift_hz,
                                   const SbsGainProfile& profile, const LinkConfig& config) {
    ComplexEnvelope carrier = make_unit_carrier(drive.size(), drive.sample_rate_hz);
    ComplexEnvelope shifted =
        down_shift_hz >= 0.0 ? shift_cs_ssb(carrier, down_shift_hz, ShiftDirection::Down)
                             : shift_cs_ssb(carrier, -down_shift_hz, ShiftDirection::Up);
    ComplexEnvelope probe = modulate_cs_dsb(shifted, drive, config.modulation_index);
    ComplexEnvelope amplified = apply_sbs(probe, profile);
    return photodetect(amplified, config);
}

SampledSignal detect_baseline(const SampledSignal& drive, const LinkConfig& config) {
    ComplexEnvelope carrier = make_unit_carrier(drive.size(), drive.sample_rate_hz);
    ComplexEnvelope probe = modulate_cs_dsb(carrier, drive, config.modulation_index);
    LinkConfig quiet = config;
    quiet.noise_rms = 0.0;
    return photodetect(probe, quiet);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace sbs
