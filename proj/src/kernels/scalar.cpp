// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include <cstddef>

#include "kernels_impl.hpp"
#include "tagasl/kernels.hpp"

namespace tagasl::kernels::scalar {

void asl_tagged(double half_n, double t, double p, std::span<const double> tau,
                std::span<const double> pi, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = half_n * (1.0 + t * tau[i] - p * pi[i]) + 0.5;
    }
}

void tif(double t, double p, std::span<const double> tau, std::span<const double> pi,
         std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = t * (1.0 - tau[i]) - p * (1.0 - pi[i]);
    }
}

void break_even_pi(double t, std::span<const double> p, std::span<const double> tau,
                   std::span<double> pi_out, std::span<std::uint8_t> kind_out) {
    for (std::size_t i = 0; i < pi_out.size(); ++i) {
        if (p[i] == 0.0) {
            pi_out[i] = 0.0;
            kind_out[i] = kUndefined;
            continue;
        }
        const double mass = t * (1.0 - tau[i]);
        if (mass > p[i]) {
            pi_out[i] = 0.0;
            kind_out[i] = kAlwaysBeneficial;
        } else {
            pi_out[i] = 1.0 - mass / p[i];
            kind_out[i] = kNumeric;
        }
    }
}

}  // namespace tagasl::kernels::scalar
