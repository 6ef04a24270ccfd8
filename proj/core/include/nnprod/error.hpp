#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nnprod {

/// Stable error identifiers. The CLI maps these onto exit codes and the
/// machine-readable report carries the string form.
enum class ErrorCode {
    DimensionMismatch,
    InvalidInput,
    InvalidLetter,
    NotRootOfUnity,
    Reducible,
    NotPeriodic,
    SpectralRadiusViolation,
    BoundaryPoint,
    BudgetExhausted,
    HypothesesNotMet,
    ConvergenceFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace nnprod
