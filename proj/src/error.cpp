#include "sulph/error.hpp"

namespace sulph {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveCoefficient: return "NonPositiveCoefficient";
        case ErrorCode::GammaNotBelowEta: return "GammaNotBelowEta";
        case ErrorCode::NuConditionViolated: return "NuConditionViolated";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::StabilityViolated: return "StabilityViolated";
        case ErrorCode::NonFiniteState: return "NonFiniteState";
        case ErrorCode::InitialCalciteTooLarge: return "InitialCalciteTooLarge";
        case ErrorCode::TimeStepTooLarge: return "TimeStepTooLarge";
        case ErrorCode::InsufficientPaths: return "InsufficientPaths";
        case ErrorCode::GridsNotNested: return "GridsNotNested";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::ConfigParseError: return "ConfigParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace sulph
