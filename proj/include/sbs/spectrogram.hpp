#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sbs {

enum class Normalization { None, GlobalMax };

// Time x frequency intensity matrix. Row r is frequency freq_axis_hz[r]
// (strictly increasing), column c is time time_axis_s[c] (strictly
// increasing). peak_value preserves the pre-normalization maximum so raw
// intensities stay recoverable after global-max normalization.
struct Spectrogram {
    std::vector<std::vector<double>> intensity; // [n_freq][n_time]
    std::vector<double> freq_axis_hz;
    std::vector<double> time_axis_s;
    Normalization normalization = Normalization::None;
    double peak_value = 0.0;

    std::size_t n_freq() const noexcept { return freq_axis_hz.size(); }
    std::size_t n_time() const noexcept { return time_axis_s.size(); }

    double max_intensity() const;
    void check() const; // axis/matrix shape and monotonicity invariants
};

// Scale so the global maximum is 1; a no-op (normalization stays None) for
// an all-zero matrix.
void normalize_global_max(Spectrogram& spec);

// Delimited-text matrix: first row is the time axis in seconds with an empty
// corner cell, first column is the frequency axis in Hz. Bit-reproducible
// for identical inputs.
void write_spectrogram_csv(const Spectrogram& spec, const std::string& path);
Spectrogram read_spectrogram_csv(const std::string& path);

// 8-bit grayscale PGM heatmap, lowest frequency at the image bottom.
void write_spectrogram_pgm(const Spectrogram& spec, const std::string& path);

// Largest integer decimation factor that keeps the output rate at or above
// target_rate_hz (always >= 1).
std::size_t decimation_factor(double sample_rate_hz, double target_rate_hz);

} // namespace sbs
