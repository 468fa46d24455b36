#include "sbs/oracle.hpp"

#include "sbs/errors.hpp"
#include "sbs/fft.hpp"
#include "sbs/waveforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sbs {

Spectrogram stft(const SampledSignal& signal, const StftParams& params) {
    if (params.window_len_samples < 2)
        throw Error(Errc::ConfigInvalid, "window must be at least 2 samples");
    if (params.hop_samples == 0 || params.hop_samples > params.window_len_samples)
        throw Error(Errc::ConfigInvalid, "hop must be in 1..window_len");
    if (signal.size() < params.window_len_samples)
        throw Error(Errc::SignalTooShort, "signal shorter than the analysis window");

    const std::size_t n = params.window_len_samples;
    std::vector<double> window(n, 1.0);
    if (params.window_fn == WindowFn::Hann)
        for (std::size_t i = 0; i < n; ++i)
            window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                              static_cast<double>(i) /
                                              static_cast<double>(n)));

    const std::size_t n_bins = n / 2 + 1;
    const std::size_t n_frames = (signal.size() - n) / params.hop_samples + 1;

    Spectrogram spec;
    spec.freq_axis_hz.resize(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k)
        spec.freq_axis_hz[k] =
            static_cast<double>(k) * signal.sample_rate_hz / static_cast<double>(n);
    spec.time_axis_s.resize(n_frames);
    spec.intensity.assign(n_bins, std::vector<double>(n_frames, 0.0));

    std::vector<std::complex<double>> work(n);
    for (std::size_t f = 0; f < n_frames; ++f) {
        const std::size_t start = f * params.hop_samples;
        spec.time_axis_s[f] =
            signal.time_at(start + n / 2); // frame timestamped at its center
        for (std::size_t i = 0; i < n; ++i)
            work[i] = signal.samples[start + i] * window[i];
        fft::forward_inplace(work);
        for (std::size_t k = 0; k < n_bins; ++k)
            spec.intensity[k][f] = std::norm(work[k]) / static_cast<double>(n);
    }

    normalize_global_max(spec);
    spec.check();
    return spec;
}

namespace {

std::size_t nearest_row(const std::vector<double>& axis, double f) {
    if (axis.empty())
        throw Error(Errc::FrequencyOutOfAxis, "empty frequency axis");
    const auto it = std::lower_bound(axis.begin(), axis.end(), f);
    if (it == axis.begin())
        return 0;
    if (it == axis.end())
        return axis.size() - 1;
    const auto hi = static_cast<std::size_t>(std::distance(axis.begin(), it));
    return (f - axis[hi - 1] <= axis[hi] - f) ? hi - 1 : hi;
}

} // namespace

TwoToneResult two_tone_resolvability(const Spectrogram& spec, double f_a_hz, double f_b_hz) {
    if (f_a_hz == f_b_hz)
        throw Error(Errc::FrequencyOutOfAxis, "degenerate two-tone request (f_a == f_b)");
    if (spec.n_freq() == 0 || spec.n_time() == 0)
        throw Error(Errc::FrequencyOutOfAxis, "empty spectrogram");
    const double lo = spec.freq_axis_hz.front();
    const double hi = spec.freq_axis_hz.back();
    const double spacing = spec.n_freq() > 1 ? spec.freq_axis_hz[1] - spec.freq_axis_hz[0]
                                             : hi - lo + 1.0;
    for (double f : {f_a_hz, f_b_hz})
        if (f < lo - spacing || f > hi + spacing)
            throw Error(Errc::FrequencyOutOfAxis, "tone frequency outside the axis");

    std::size_t ra = nearest_row(spec.freq_axis_hz, f_a_hz);
    std::size_t rb = nearest_row(spec.freq_axis_hz, f_b_hz);
    if (ra > rb)
        std::swap(ra, rb);

    double acc = 0.0;
    std::size_t counted = 0;
    for (std::size_t c = 0; c < spec.n_time(); ++c) {
        const double pa = spec.intensity[ra][c];
        const double pb = spec.intensity[rb][c];
        const double lesser = std::min(pa, pb);
        if (lesser <= 0.0)
            continue;
        double valley = lesser; // closed interval: adjacent rows give ratio 1
        for (std::size_t r = ra + 1; r < rb; ++r)
            valley = std::min(valley, spec.intensity[r][c]);
        acc += valley / lesser;
        ++counted;
    }

    TwoToneResult result;
    result.valley_ratio = counted > 0 ? acc / static_cast<double>(counted) : 1.0;
    result.resolved = result.valley_ratio < 0.5;
    return result;
}

RidgeCompare compare_ridges(const RidgeSeries& a, const RidgeSeries& b) {
    if (a.time_axis_s.empty() || b.time_axis_s.empty())
        throw Error(Errc::EmptyOverlap, "empty ridge series");
    const double t_lo = std::max(a.time_axis_s.front(), b.time_axis_s.front());
    const double t_hi = std::min(a.time_axis_s.back(), b.time_axis_s.back());
    if (t_lo > t_hi)
        throw Error(Errc::EmptyOverlap, "ridge time supports do not overlap");

    double b_spacing = t_hi - t_lo;
    if (b.time_axis_s.size() > 1) {
        b_spacing = (b.time_axis_s.back() - b.time_axis_s.front()) /
                    static_cast<double>(b.time_axis_s.size() - 1);
    }

    std::vector<double> errs;
    std::size_t overlap_columns = 0;
    for (std::size_t i = 0; i < a.time_axis_s.size(); ++i) {
        const double t = a.time_axis_s[i];
        if (t < t_lo || t > t_hi)
            continue;
        ++overlap_columns;
        if (!a.freq_hz[i])
            continue;
        const auto it = std::lower_bound(b.time_axis_s.begin(), b.time_axis_s.end(), t);
        std::size_t j = static_cast<std::size_t>(std::distance(b.time_axis_s.begin(), it));
        if (j == b.time_axis_s.size() ||
            (j > 0 && t - b.time_axis_s[j - 1] <= b.time_axis_s[j] - t))
            --j;
        if (std::abs(b.time_axis_s[j] - t) > 0.75 * b_spacing + 1e-15)
            continue;
        if (!b.freq_hz[j])
            continue;
        errs.push_back(std::abs(*a.freq_hz[i] - *b.freq_hz[j]));
    }
    if (overlap_columns == 0)
        throw Error(Errc::EmptyOverlap, "no ridge columns in the common time support");

    RidgeCompare out;
    out.coverage_fraction =
        static_cast<double>(errs.size()) / static_cast<double>(overlap_columns);
    if (!errs.empty()) {
        const std::size_t mid = errs.size() / 2;
        std::nth_element(errs.begin(), errs.begin() + static_cast<std::ptrdiff_t>(mid),
                         errs.end());
        out.median_abs_err_hz = errs[mid];
        if (errs.size() % 2 == 0) {
            std::nth_element(errs.begin(),
                             errs.begin() + static_cast<std::ptrdiff_t>(mid) - 1, errs.end());
            out.median_abs_err_hz = 0.5 * (out.median_abs_err_hz + errs[mid - 1]);
        }
    }
    return out;
}

double min_resolvable_separation(const LinkConfig& config, const SfcwPlan& plan_template,
                                 double sample_rate_hz, double base_tone_hz,
                                 std::vector<double> search_grid_hz) {
    if (search_grid_hz.empty())
        throw Error(Errc::ConfigInvalid, "empty search grid");
    std::sort(search_grid_hz.begin(), search_grid_hz.end());
    for (double s : search_grid_hz)
        if (s <= 0.0)
            throw Error(Errc::ConfigInvalid, "separations must be > 0");

    auto resolved_at = [&](double separation) {
        SfcwPlan plan = plan_template;
        const double period = plan.step_period_s; // tones declared with T_s = T_step
        const SampledSignal sut = synthesize(
            MultiToneSpec{{base_tone_hz, base_tone_hz + separation}, period},
            sample_rate_hz, 1);
        validate_plan(plan, period);
        const double reference = measured_frequency(plan, 1, config);
        const RawTrace trace = run_time_division(sut, reference, plan, config);
        // Tone SUT stripes are themselves step-wide, so the reference is
        // discriminated by height alone here (it is 4x the tone amplitude,
        // 16x in detected power).
        const PulseDetection anchor = find_reference_pulse(trace, 0.5, 0.0);
        const SfcwFrame frame = extract_frame(trace, anchor);
        const Spectrogram spec = segment_and_stack(frame, plan, config);
        return two_tone_resolvability(spec, base_tone_hz, base_tone_hz + separation)
            .resolved;
    };

    // Leftmost resolved separation; resolvability is monotone in separation.
    std::size_t lo = 0;
    std::size_t hi = search_grid_hz.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (resolved_at(search_grid_hz[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == search_grid_hz.size())
        throw Error(Errc::NoneResolved, "no separation in the grid resolves");
    return search_grid_hz[lo];
}

double normalized_linf_distance(const Spectrogram& a, const Spectrogram& b) {
    const double ma = a.max_intensity();
    const double mb = b.max_intensity();

    auto match_axis = [](const std::vector<double>& xa, const std::vector<double>& xb,
                         double tol) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        std::size_t j = 0;
        for (std::size_t i = 0; i < xa.size(); ++i) {
            while (j < xb.size() && xb[j] < xa[i] - tol)
                ++j;
            if (j < xb.size() && std::abs(xb[j] - xa[i]) <= tol)
                pairs.emplace_back(i, j);
        }
        return pairs;
    };

    const double ftol = 1e-6 * std::max(std::abs(a.freq_axis_hz.back()), 1.0);
    const double ttol = 1e-12 + 1e-9 * std::max(std::abs(a.time_axis_s.back()), 1.0);
    const auto fpairs = match_axis(a.freq_axis_hz, b.freq_axis_hz, ftol);
    const auto tpairs = match_axis(a.time_axis_s, b.time_axis_s, ttol);
    if (fpairs.empty() || tpairs.empty())
        throw Error(Errc::EmptyOverlap, "spectrogram axes share no grid points");

    double worst = 0.0;
    for (const auto& [ra, rb] : fpairs) {
        for (const auto& [ca, cb] : tpairs) {
            const double va = ma > 0.0 ? a.intensity[ra][ca] / ma : 0.0;
            const double vb = mb > 0.0 ? b.intensity[rb][cb] / mb : 0.0;
            worst = std::max(worst, std::abs(va - vb));
        }
    }
    return worst;
}

} // namespace sbs
