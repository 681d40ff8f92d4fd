#include "cashctl/error.hpp"

namespace cashctl {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::UnmatchedFlow: return "UnmatchedFlow";
    case ErrorKind::NegativeQuantity: return "NegativeQuantity";
    case ErrorKind::CoefficientOutOfRange: return "CoefficientOutOfRange";
    case ErrorKind::InsufficientPeriods: return "InsufficientPeriods";
    case ErrorKind::NonPositiveMargin: return "NonPositiveMargin";
    case ErrorKind::InfeasibleCycle: return "InfeasibleCycle";
    case ErrorKind::NeverSolvent: return "NeverSolvent";
    case ErrorKind::AtCriticalProduction: return "AtCriticalProduction";
    case ErrorKind::AtCriticalMargin: return "AtCriticalMargin";
    case ErrorKind::ZeroProduction: return "ZeroProduction";
    case ErrorKind::BalanceViolation: return "BalanceViolation";
    case ErrorKind::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorKind::ReconciliationFailure: return "ReconciliationFailure";
    }
    return "Unknown";
}

ErrorCategory category_of(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse:
        return ErrorCategory::Parse;
    case ErrorKind::InvalidInput:
    case ErrorKind::IdentityViolation:
    case ErrorKind::UnmatchedFlow:
    case ErrorKind::NegativeQuantity:
    case ErrorKind::CoefficientOutOfRange:
    case ErrorKind::InsufficientPeriods:
        return ErrorCategory::Validation;
    default:
        return ErrorCategory::Domain;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

}  // namespace cashctl
