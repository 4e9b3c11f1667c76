#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frob {

enum class Errc {
    NotCoprime,
    NotStrictlyIncreasing,
    TooFewElements,
    NonPositiveElement,
    BudgetExceeded,
    DimensionTooSmall,
    RankDeficient,
    DimensionMismatch,
    NonPositiveScale,
    DegenerateSimplex,
    UnboundedEnumeration,
    ToleranceTooSmall,
    AlphaOutOfRange,
    NonIntegerCoefficient,
    CommonFactorFound,
    OrderingFailed,
    GcdNotOne,
    SignConventionFailed,
    InsufficientSequence,
    BudgetExhausted,
    InvalidAlpha,
    IOFailure,
    ParseError,
};

inline std::string_view errc_name(Errc e) {
    switch (e) {
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case Errc::TooFewElements: return "TooFewElements";
    case Errc::NonPositiveElement: return "NonPositiveElement";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonPositiveScale: return "NonPositiveScale";
    case Errc::DegenerateSimplex: return "DegenerateSimplex";
    case Errc::UnboundedEnumeration: return "UnboundedEnumeration";
    case Errc::ToleranceTooSmall: return "ToleranceTooSmall";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::NonIntegerCoefficient: return "NonIntegerCoefficient";
    case Errc::CommonFactorFound: return "CommonFactorFound";
    case Errc::OrderingFailed: return "OrderingFailed";
    case Errc::GcdNotOne: return "GcdNotOne";
    case Errc::SignConventionFailed: return "SignConventionFailed";
    case Errc::InsufficientSequence: return "InsufficientSequence";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::InvalidAlpha: return "InvalidAlpha";
    case Errc::IOFailure: return "IOFailure";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace frob
