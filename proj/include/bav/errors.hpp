#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bav {

enum class Errc {
    InvalidPotential,
    InvalidState,
    InvalidConfig,
    OriginSingularity,
    DegenerateExponent,
    DegenerateCoupling,
    ZeroEnergy,
    StepFailure,
    InapplicableQuantity,
    BranchJump,
    MetadataMismatch,
    TurningPoint,
    TooFewSamples,
    MalformedInput,
};

constexpr std::string_view errc_name(Errc e) {
    switch (e) {
        case Errc::InvalidPotential: return "InvalidPotential";
        case Errc::InvalidState: return "InvalidState";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::OriginSingularity: return "OriginSingularity";
        case Errc::DegenerateExponent: return "DegenerateExponent";
        case Errc::DegenerateCoupling: return "DegenerateCoupling";
        case Errc::ZeroEnergy: return "ZeroEnergy";
        case Errc::StepFailure: return "StepFailure";
        case Errc::InapplicableQuantity: return "InapplicableQuantity";
        case Errc::BranchJump: return "BranchJump";
        case Errc::MetadataMismatch: return "MetadataMismatch";
        case Errc::TurningPoint: return "TurningPoint";
        case Errc::TooFewSamples: return "TooFewSamples";
        case Errc::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

/// Error raised by every module of the library. The message is prefixed
/// with the error-kind name so CLI diagnostics identify the failure class.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace bav
