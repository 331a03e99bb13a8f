#include "bayesmv/error.hpp"

namespace bayesmv {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::SingularScatter: return "SingularScatter";
        case ErrorCode::SingularCovariance: return "SingularCovariance";
        case ErrorCode::DegreesOfFreedom: return "DegreesOfFreedom";
        case ErrorCode::NonPositiveGamma: return "NonPositiveGamma";
        case ErrorCode::DegenerateFrontier: return "DegenerateFrontier";
        case ErrorCode::InfeasibleVariance: return "InfeasibleVariance";
        case ErrorCode::BelowMinimumVariance: return "BelowMinimumVariance";
        case ErrorCode::InvalidWeights: return "InvalidWeights";
        case ErrorCode::InvalidAlpha: return "InvalidAlpha";
        case ErrorCode::InsufficientDraws: return "InsufficientDraws";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::MalformedCsv: return "MalformedCsv";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::DuplicateLabels: return "DuplicateLabels";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace bayesmv
