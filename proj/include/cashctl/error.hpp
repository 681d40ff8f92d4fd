#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cashctl {

enum class ErrorKind {
    // input could not be read
    Parse,
    // input read but violates a model invariant
    InvalidInput,
    IdentityViolation,
    UnmatchedFlow,
    NegativeQuantity,
    CoefficientOutOfRange,
    InsufficientPeriods,
    // inputs valid but the requested quantity is undefined for them
    NonPositiveMargin,
    InfeasibleCycle,
    NeverSolvent,
    AtCriticalProduction,
    AtCriticalMargin,
    ZeroProduction,
    // internal cross-checks; reaching these means an arithmetic bug
    BalanceViolation,
    DecompositionMismatch,
    ReconciliationFailure,
};

enum class ErrorCategory { Parse, Validation, Domain };

std::string_view to_string(ErrorKind kind);
ErrorCategory category_of(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] ErrorCategory category() const noexcept { return category_of(kind_); }

private:
    ErrorKind kind_;
};

}  // namespace cashctl
