#pragma once

#include "sbs/link.hpp"
#include "sbs/signal.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sbs {

// Step-frequency carrier scan. period_multiple_m is set by validate_plan;
// running a scan without it raises PlanNotValidated.
struct SfcwPlan {
    double f_step1_hz = 0.0;
    double delta_step_hz = 0.0;
    double step_period_s = 0.0;
    std::size_t n_steps = 0;
    std::optional<std::size_t> period_multiple_m;

    double scan_duration_s() const {
        return static_cast<double>(n_steps) * step_period_s;
    }
    // SFCW carrier frequency of step n (1-based).
    double step_frequency_hz(std::size_t n) const {
        return f_step1_hz + static_cast<double>(n - 1) * delta_step_hz;
    }
};

void validate_plan_fields(const SfcwPlan& plan);

// Enforces the step-period constraint T_step = m * T_s for integer m
// (relative tolerance 1e-9). Stores m in the plan and returns it;
// PeriodMismatch if no integer m exists.
std::size_t validate_plan(SfcwPlan& plan, double sut_period_s);

// Frequency component of the SUT measured by step n (1-based):
// f_n = f_step1 + (n-1)*delta_step + (f_pump - f_SBS).
double measured_frequency(const SfcwPlan& plan, std::size_t n, const LinkConfig& config);

// Concatenated per-step detector outputs plus the bookkeeping the
// reconstruction stage needs: the per-step baseline (identical for every
// step) and the reference tone frequency.
struct RawTrace {
    SampledSignal detected;
    SfcwPlan plan;
    std::vector<double> measured_freqs_hz;
    double reference_freq_hz = 0.0;
    SampledSignal baseline; // one step period long
    std::size_t start_step = 1;

    std::size_t step_samples() const { return baseline.size(); }
};

// Run the SFCW-scanned measurement: for each step, shift the probe carrier
// down by the step frequency, CS-DSB modulate with SUT + reference, apply
// the fixed SBS gain, photodetect; concatenate traces in step order.
//
// `sut` is exactly one SUT period; it is tiled m times to fill each step
// period (exact under the validated plan). The reference tone is placed at
// reference_freq_hz with amplitude 2x the SUT peak (1.0 if the SUT is
// silent), so the reconstruction's wide-and-high detector is unambiguous.
RawTrace run_time_division(const SampledSignal& sut, double reference_freq_hz,
                           const SfcwPlan& plan, const LinkConfig& config);

} // namespace sbs
