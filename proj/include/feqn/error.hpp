// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace feqn {

enum class ErrorCode {
    InvalidArgument,  // malformed value handed to an engine
    Parse,            // problem-spec syntax or schema violation
    Precondition,     // engine precondition not met (e.g. invariance fails)
    Inconsistent,     // input data contradicts the equation being solved
    MissingData,      // a required table entry is absent
    SizeGuard,        // exhaustive search would exceed its budget
    Internal,         // a step that must succeed failed
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace feqn
