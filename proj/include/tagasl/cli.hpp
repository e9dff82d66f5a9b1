// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tagasl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. Data goes to `out`
/// (or the --out file), diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tagasl::cli
