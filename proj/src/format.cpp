// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/format.hpp"

#include <array>
#include <charconv>

#include "tagasl/error.hpp"

namespace tagasl {

std::string format_real(double v, int significant) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, significant);
    if (ec != std::errc{}) {
        throw Error(ErrorCode::Internal, "number formatting failed");
    }
    return std::string(buf.data(), end);
}

}  // namespace tagasl
