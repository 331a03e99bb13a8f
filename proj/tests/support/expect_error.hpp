#pragma once

#include <gtest/gtest.h>

#include "bayesmv/error.hpp"

namespace bayesmv::testing {

// Runs `fn` and returns the code of the bayesmv::Error it throws.
template <typename Fn>
ErrorCode error_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected bayesmv::Error";
    return ErrorCode::InvalidArgument;
}

}  // namespace bayesmv::testing
