// qsl/error.hpp: error kinds shared by every qsl module.
//
// Errors are thrown as qsl::Error. Each kind belongs to one of two classes:
// a precondition failure (the caller supplied data outside an operation's
// domain) or a numeric failure (the input was valid but the computation
// could not certify its result). The CLI maps the classes to exit codes.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsl {

enum class ErrorKind {
    // preconditions
    InvalidArgument,
    NormTooLarge,
    EndpointNotAttained,
    DegenerateSpectrum,
    TooFewPoints,
    NotNumbered,
    ZeroAtOrigin,
    WindowTooSmall,
    LineTooLow,
    NeigDiverges,
    // numeric failures
    Overflow,
    CapExceeded,
    BoundaryZero,
    NonIntegerWinding,
    ResolutionLimit,
    ZeroEscape,
    QuadratureNotConverged,
    SpectrumUnbounded,
    ZeroMismatch,
};

inline constexpr std::string_view to_string(ErrorKind k) noexcept {
    switch (k) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NormTooLarge: return "NormTooLarge";
        case ErrorKind::EndpointNotAttained: return "EndpointNotAttained";
        case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorKind::TooFewPoints: return "TooFewPoints";
        case ErrorKind::NotNumbered: return "NotNumbered";
        case ErrorKind::ZeroAtOrigin: return "ZeroAtOrigin";
        case ErrorKind::WindowTooSmall: return "WindowTooSmall";
        case ErrorKind::LineTooLow: return "LineTooLow";
        case ErrorKind::NeigDiverges: return "NeigDiverges";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::BoundaryZero: return "BoundaryZero";
        case ErrorKind::NonIntegerWinding: return "NonIntegerWinding";
        case ErrorKind::ResolutionLimit: return "ResolutionLimit";
        case ErrorKind::ZeroEscape: return "ZeroEscape";
        case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorKind::SpectrumUnbounded: return "SpectrumUnbounded";
        case ErrorKind::ZeroMismatch: return "ZeroMismatch";
    }
    return "Unknown";
}

inline constexpr bool is_precondition(ErrorKind k) noexcept {
    return k <= ErrorKind::NeigDiverges;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace qsl
