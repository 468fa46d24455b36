#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sbs::fft {

// Unnormalized forward DFT, in place.
void forward_inplace(std::vector<std::complex<double>>& data);

// Inverse DFT, in place, normalized by 1/N (round trip is the identity).
void inverse_inplace(std::vector<std::complex<double>>& data);

// Signed bin frequency (Hz) of bin k for an N-point transform at fs:
// 0, fs/N, ..., up to Nyquist, then negative frequencies.
double bin_frequency(std::size_t k, std::size_t n, double sample_rate_hz);

} // namespace sbs::fft
