#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace capslice {

enum class ErrorCode {
    NotPrime,
    OutOfRange,
    DigitOutOfRange,
    CodeOutOfRange,
    DimensionMismatch,
    BadHeader,
    BadDigit,
    DuplicatePoint,
    FieldMismatch,
    InvalidTriple,
    InvalidCoefficients,
    InvalidArgument,
    TooLarge,
    NotIndependent,
    NoValidRearrangement,
    TooSmall,
    Infeasible,
    BadConfig,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::CodeOutOfRange: return "CodeOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::BadDigit: return "BadDigit";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidTriple: return "InvalidTriple";
    case ErrorCode::InvalidCoefficients: return "InvalidCoefficients";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::NoValidRearrangement: return "NoValidRearrangement";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::BadConfig: return "BadConfig";
    }
    return "Unknown";
}

/// Domain error raised by every capslice operation. `line()` is nonzero only
/// for errors tied to a position in a parsed set file.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::size_t line = 0)
        : std::runtime_error(std::string(to_string(code)) + ": " + message)
        , code_(code)
        , line_(line)
        , message_(message)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::size_t line_;
    std::string message_;
};

} // namespace capslice
