// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <string>

namespace tagasl {

/// Shortest-style rendering with `significant` digits, locale independent.
std::string format_real(double v, int significant = 12);

}  // namespace tagasl
