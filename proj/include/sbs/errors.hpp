#pragma once

#include <stdexcept>
#include <string>

namespace sbs {

// Error categories. The CLI maps them onto exit codes:
// config problems -> 2, physics/plan problems -> 3 (assertion failures are 4,
// raised by the scenario runner, not by this hierarchy).
enum class Errc {
    ConfigInvalid,
    InvalidSpec,
    NyquistViolation,
    RateMismatch,
    LengthMismatch,
    StartTimeMismatch,
    OutOfRange,
    PeriodMismatch,
    IndexOutOfRange,
    PlanNotValidated,
    NoReferenceFound,
    InsufficientData,
    LengthIndivisible,
    SignalTooShort,
    FrequencyOutOfAxis,
    EmptyOverlap,
    NoneResolved,
};

const char* errc_name(Errc code);
int errc_exit_code(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace sbs
