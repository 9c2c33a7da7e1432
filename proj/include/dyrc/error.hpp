#pragma once

#include <stdexcept>
#include <string>

namespace dyrc {

enum class Errc {
    InvalidArgument,
    NonFinite,
    TooShort,
    LengthMismatch,
    NonMonotonicTimes,
    SectionTooLong,
    NoConvergence,
    ZeroSpectralRadius,
    DimensionMismatch,
    SingularSystem,
    NotTrained,
    ShapeMismatch,
    EmptyCell,
    ParseError,
    IoError,
};

[[nodiscard]] constexpr const char* to_string(Errc c) noexcept {
    switch (c) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::NonFinite: return "NonFinite";
        case Errc::TooShort: return "TooShort";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::NonMonotonicTimes: return "NonMonotonicTimes";
        case Errc::SectionTooLong: return "SectionTooLong";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::ZeroSpectralRadius: return "ZeroSpectralRadius";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::SingularSystem: return "SingularSystem";
        case Errc::NotTrained: return "NotTrained";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::EmptyCell: return "EmptyCell";
        case Errc::ParseError: return "ParseError";
        case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the experiment runner, the CLI) can map it without string matching.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

}  // namespace dyrc
