#include "sbs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace sbs::fft {

namespace {

// FFTW plan creation is not thread safe; execution via fftw_execute_dft on
// caller buffers is. Plans are cached per (size, sign) and created with
// FFTW_UNALIGNED so they accept any std::vector storage.
class PlanCache {
public:
    static fftw_plan get(std::size_t n, int sign) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mutex_);
        auto key = std::make_pair(n, sign);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end())
            return it->second;
        std::vector<std::complex<double>> scratch(n);
        fftw_plan plan = fftw_plan_dft_1d(
            static_cast<int>(n),
            reinterpret_cast<fftw_complex*>(scratch.data()),
            reinterpret_cast<fftw_complex*>(scratch.data()),
            sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.plans_.emplace(key, plan);
        return plan;
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void execute(std::vector<std::complex<double>>& data, int sign) {
    if (data.empty())
        return;
    fftw_plan plan = PlanCache::get(data.size(), sign);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

} // namespace

void forward_inplace(std::vector<std::complex<double>>& data) {
    execute(data, FFTW_FORWARD);
}

void inverse_inplace(std::vector<std::complex<double>>& data) {
    execute(data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data)
        v *= scale;
}

double bin_frequency(std::size_t k, std::size_t n, double sample_rate_hz) {
    const auto half = n / 2;
    const double step = sample_rate_hz / static_cast<double>(n);
    if (k <= half && !(n % 2 == 0 && k == half))
        return static_cast<double>(k) * step;
    if (n % 2 == 0 && k == half)
        return -static_cast<double>(half) * step; // Nyquist bin, negative by convention
    return (static_cast<double>(k) - static_cast<double>(n)) * step;
}

} // namespace sbs::fft
