#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bqm {

enum class ErrorKind {
    DimensionMismatch,
    NotHermitian,
    NotFinite,
    ConvergenceFailure,
    NotCommuting,
    NonCommuting,
    InvalidState,
    DegenerateWeights,
    NoMatchingBranch,
    ZeroProbabilityBranch,
    InvalidArgument,
    NotUnit,
    BadDistribution,
    ParseError,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Every failure raised by the engine. `what()` is prefixed with the error name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

    /// True for failures caused by bad user input rather than numerical breakdown.
    bool is_validation() const noexcept
    {
        switch (kind_) {
        case ErrorKind::ConvergenceFailure:
        case ErrorKind::NoMatchingBranch:
        case ErrorKind::ZeroProbabilityBranch:
        case ErrorKind::DegenerateWeights:
            return false;
        default:
            return true;
        }
    }

private:
    ErrorKind kind_;
};

} // namespace bqm
