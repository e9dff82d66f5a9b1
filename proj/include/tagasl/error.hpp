// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace tagasl {

enum class ErrorCode {
    InvalidArgument,
    EmptyCorpus,
    Malformed,
    DuplicateId,
    LayerMismatch,
    NoRelevant,
    MissingParameter,
    UnknownLayer,
    EmptyEvaluation,
    Internal,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library. The code lets callers (the CLI in
/// particular) map failures onto exit statuses without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace tagasl
