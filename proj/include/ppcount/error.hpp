#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppcount {

enum class ErrorKind {
    InvalidPrime,
    InvalidArgument,
    ZeroPolynomial,
    ZeroReduction,
    ConstantReduction,
    BranchMismatch,
    ValuationOutOfRange,
    NotSmooth,
    NotARoot,
    PrimeTooLarge,
    OracleTooLarge,
    ResourceLimit,
    Internal,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidPrime: return "InvalidPrime";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::ZeroReduction: return "ZeroReduction";
        case ErrorKind::ConstantReduction: return "ConstantReduction";
        case ErrorKind::BranchMismatch: return "BranchMismatch";
        case ErrorKind::ValuationOutOfRange: return "ValuationOutOfRange";
        case ErrorKind::NotSmooth: return "NotSmooth";
        case ErrorKind::NotARoot: return "NotARoot";
        case ErrorKind::PrimeTooLarge: return "PrimeTooLarge";
        case ErrorKind::OracleTooLarge: return "OracleTooLarge";
        case ErrorKind::ResourceLimit: return "ResourceLimit";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Resource and internal failures map to exit code 2, the rest to 1.
    bool is_resource_error() const noexcept {
        return kind_ == ErrorKind::ResourceLimit || kind_ == ErrorKind::Internal ||
               kind_ == ErrorKind::PrimeTooLarge || kind_ == ErrorKind::OracleTooLarge;
    }

private:
    ErrorKind kind_;
};

}  // namespace ppcount
