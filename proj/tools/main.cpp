// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include <iostream>
#include <string>
#include <vector>

#include "tagasl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tagasl::cli::run(args, std::cout, std::cerr);
}
