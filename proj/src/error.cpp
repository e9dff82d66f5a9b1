// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/error.hpp"

namespace tagasl {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::Malformed: return "Malformed";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::LayerMismatch: return "LayerMismatch";
        case ErrorCode::NoRelevant: return "NoRelevant";
        case ErrorCode::MissingParameter: return "MissingParameter";
        case ErrorCode::UnknownLayer: return "UnknownLayer";
        case ErrorCode::EmptyEvaluation: return "EmptyEvaluation";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace tagasl
