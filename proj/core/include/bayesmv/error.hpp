#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bayesmv {

enum class ErrorCode {
    NonFiniteInput,
    SingularScatter,
    SingularCovariance,
    DegreesOfFreedom,
    NonPositiveGamma,
    DegenerateFrontier,
    InfeasibleVariance,
    BelowMinimumVariance,
    InvalidWeights,
    InvalidAlpha,
    InsufficientDraws,
    InvalidArgument,
    MalformedCsv,
    EmptyInput,
    DuplicateLabels,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// front ends can map it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bayesmv
