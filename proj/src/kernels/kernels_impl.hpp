// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <span>

namespace tagasl::kernels {

namespace scalar {
void asl_tagged(double half_n, double t, double p, std::span<const double> tau,
                std::span<const double> pi, std::span<double> out);
void tif(double t, double p, std::span<const double> tau, std::span<const double> pi,
         std::span<double> out);
void break_even_pi(double t, std::span<const double> p, std::span<const double> tau,
                   std::span<double> pi_out, std::span<std::uint8_t> kind_out);
}  // namespace scalar

#if defined(TAGASL_HAVE_AVX2)
namespace avx2 {
void asl_tagged(double half_n, double t, double p, std::span<const double> tau,
                std::span<const double> pi, std::span<double> out);
void tif(double t, double p, std::span<const double> tau, std::span<const double> pi,
         std::span<double> out);
void break_even_pi(double t, std::span<const double> p, std::span<const double> tau,
                   std::span<double> pi_out, std::span<std::uint8_t> kind_out);
}  // namespace avx2
#endif

}  // namespace tagasl::kernels
