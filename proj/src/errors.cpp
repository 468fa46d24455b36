#include "sbs/errors.hpp"

namespace sbs {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::NyquistViolation: return "NyquistViolation";
    case Errc::RateMismatch: return "RateMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::StartTimeMismatch: return "StartTimeMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::PeriodMismatch: return "PeriodMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::PlanNotValidated: return "PlanNotValidated";
    case Errc::NoReferenceFound: return "NoReferenceFound";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::LengthIndivisible: return "LengthIndivisible";
    case Errc::SignalTooShort: return "SignalTooShort";
    case Errc::FrequencyOutOfAxis: return "FrequencyOutOfAxis";
    case Errc::EmptyOverlap: return "EmptyOverlap";
    case Errc::NoneResolved: return "NoneResolved";
    }
    return "UnknownError";
}

int errc_exit_code(Errc code) {
    switch (code) {
    case Errc::ConfigInvalid:
    case Errc::InvalidSpec:
        return 2;
    default:
        return 3;
    }
}

} // namespace sbs
