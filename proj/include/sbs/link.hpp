#pragma once

#include "sbs/signal.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace sbs {

// Complex optical field at baseband relative to the laser carrier f_c.
// carrier_offset_hz annotates where this field's nominal carrier sits
// relative to f_c; the samples themselves are always referenced to f_c.
struct ComplexEnvelope {
    std::vector<std::complex<double>> samples;
    double sample_rate_hz = 0.0;
    double carrier_offset_hz = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
};

// Lorentzian SBS gain line: center offset from f_c, FWHM bandwidth Gamma,
// and on-resonance power gain in dB.
struct SbsGainProfile {
    double center_offset_hz = 0.0;
    double fwhm_hz = 0.0;
    double peak_gain_db = 0.0;
};

struct LinkConfig {
    double f_sbs_hz = 10.8e9;          // Brillouin frequency shift
    double f_pump_offset_hz = 10.85e9; // pump RF frequency f_p
    double modulation_index = 0.1;     // in (0, 1]
    double gain_fwhm_hz = 20e6;        // SBS gain bandwidth Gamma
    double peak_gain_db = 20.0;        // on-resonance SBS power gain
    double detector_lpf_hz = 0.0;      // 0 -> default 4 * Gamma
    double output_rate_hz = 0.0;       // spectrogram row rate; 0 -> 4 * LPF cutoff
    double noise_rms = 0.0;            // additive detector noise level, 0 disables
    std::uint64_t rng_seed = 1;

    double resolved_detector_lpf_hz() const {
        return detector_lpf_hz > 0.0 ? detector_lpf_hz : 4.0 * gain_fwhm_hz;
    }
    double resolved_output_rate_hz() const {
        return output_rate_hz > 0.0 ? output_rate_hz : 4.0 * resolved_detector_lpf_hz();
    }
    // Offset of the SBS gain center from f_c: f_SBS-Gain - f_c = f_p - f_SBS.
    double gain_center_offset_hz() const { return f_pump_offset_hz - f_sbs_hz; }
    SbsGainProfile gain_profile() const {
        return {gain_center_offset_hz(), gain_fwhm_hz, peak_gain_db};
    }
};

void validate_link_config(const LinkConfig& config);

enum class ShiftDirection { Up, Down };

ComplexEnvelope make_unit_carrier(std::size_t n_samples, double sample_rate_hz);

// Null-biased MZM, carrier-suppressed double sideband:
// E_out(t) = E_in(t) * sin(modulation_index * pi/2 * v(t)), with the drive
// normalized to unit peak. The sin transfer is kept in full so higher-order
// sidebands appear at large modulation index.
ComplexEnvelope modulate_cs_dsb(const ComplexEnvelope& carrier, const SampledSignal& drive,
                                double modulation_index);

// Ideal carrier-suppressed single-sideband modulator: exact multiplication by
// a complex exponential at +/- shift_hz. Infinite sideband suppression.
ComplexEnvelope shift_cs_ssb(const ComplexEnvelope& field, double shift_hz,
                             ShiftDirection direction);

// Complex field gain at a detuning delta from the gain center:
// H(delta) = exp((g/2) / (1 + 2j*delta/Gamma)), g = ln(10^(peak_db/10)).
// Power gain in dB is exactly peak_gain_db / (1 + (2*delta/Gamma)^2).
std::complex<double> sbs_gain_response(const SbsGainProfile& profile, double detuning_hz);

// Frequency-domain pointwise multiplication of the probe spectrum by the
// gain response. Linear, steady-state, no pump depletion. Circular by
// construction, i.e. the exact periodic steady state of the framed signal.
ComplexEnvelope apply_sbs(const ComplexEnvelope& probe, const SbsGainProfile& profile);

// Square-law detection: y = LPF(|E|^2) + n. The low-pass is zero-phase with
// a raised-cosine edge around the cutoff. Noise is seeded Gaussian with RMS
// config.noise_rms.
SampledSignal photodetect(const ComplexEnvelope& field, const LinkConfig& config);

// One elementary FTTM measurement, shared by both link architectures:
// shift the probe carrier down by down_shift_hz (negative shifts go up),
// CS-DSB modulate with the drive, apply the SBS gain, photodetect.
SampledSignal detect_shifted_probe(const SampledSignal& drive, double down_shift_hz,
                                   const SbsGainProfile& profile, const LinkConfig& config);

// Detector response of the modulated probe with the SBS gain bypassed.
// Independent of the per-step carrier shift, so one trace per drive serves
// every step; reconstruction subtracts it before thresholding.
SampledSignal detect_baseline(const SampledSignal& drive, const LinkConfig& config);

// Deterministic per-step/per-branch seed derivation so concurrent execution
// order cannot change results.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace sbs
