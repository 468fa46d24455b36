#pragma once

#include "sbs/link.hpp"
#include "sbs/signal.hpp"
#include "sbs/spectrogram.hpp"

#include <cstddef>

namespace sbs {

// N parallel FTTM branches, one frequency bin each, detecting continuously.
struct BranchPlan {
    double f_base_hz = 0.0; // frequency measured by branch 0
    double delta_f_hz = 0.0;
    std::size_t n_branches = 0;
    ShiftDirection direction = ShiftDirection::Up;
};

void validate_branch_plan(const BranchPlan& plan);

// f_base +/- k * delta_f depending on direction; k is 0-based.
double branch_frequency(const BranchPlan& plan, std::size_t k);

// Per branch: shift the probe carrier so the branch's bin lands on the fixed
// SBS gain, CS-DSB modulate with the SUT, apply the gain, photodetect. Rows
// are decimated to the configured output rate (anti-aliased by the detector
// low-pass) and assembled in ascending frequency order.
Spectrogram run_parallel(const SampledSignal& sut, const BranchPlan& plan,
                         const LinkConfig& config);

} // namespace sbs
