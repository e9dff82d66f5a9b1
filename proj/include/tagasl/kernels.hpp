// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

// Batch evaluation of the model over parameter lattices. A scalar reference
// implementation and an AVX2 variant share one contract: identical inputs
// produce bit-identical outputs (the build disables FMA contraction, and
// every variant uses the same operation order as the scalar model).
//
// The active backend is picked once at startup from CPUID and can be forced
// for testing.

#include <cstdint>
#include <span>
#include <vector>

namespace tagasl::kernels {

enum class Backend { Scalar, Avx2 };

const char* to_string(Backend b);

bool backend_supported(Backend b);
Backend detected_backend();
Backend active_backend();

/// Throws tagasl::Error(InvalidArgument) when the CPU or build lacks `b`.
void force_backend(Backend b);

/// Break-even kind codes written by break_even_pi; values mirror BreakEvenKind.
inline constexpr std::uint8_t kNumeric = 0;
inline constexpr std::uint8_t kAlwaysBeneficial = 1;
inline constexpr std::uint8_t kUndefined = 2;

/// out[i] = half_n * (1 + t*tau[i] - p*pi[i]) + 1/2
void asl_tagged(double half_n, double t, double p, std::span<const double> tau,
                std::span<const double> pi, std::span<double> out);

/// out[i] = t*(1 - tau[i]) - p*(1 - pi[i])
void tif(double t, double p, std::span<const double> tau, std::span<const double> pi,
         std::span<double> out);

/// Per-cell break-even pi for the given t. pi_out[i] is 0 for non-numeric cells.
void break_even_pi(double t, std::span<const double> p, std::span<const double> tau,
                   std::span<double> pi_out, std::span<std::uint8_t> kind_out);

/// Direct access to one backend, bypassing dispatch.
struct Table {
    void (*asl_tagged)(double, double, double, std::span<const double>, std::span<const double>,
                       std::span<double>);
    void (*tif)(double, double, std::span<const double>, std::span<const double>,
                std::span<double>);
    void (*break_even_pi)(double, std::span<const double>, std::span<const double>,
                          std::span<double>, std::span<std::uint8_t>);
};

const Table& table(Backend b);

}  // namespace tagasl::kernels
