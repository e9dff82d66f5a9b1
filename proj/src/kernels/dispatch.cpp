// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include <atomic>
#include <cstddef>
#include <string>

#include "kernels_impl.hpp"
#include "tagasl/error.hpp"
#include "tagasl/kernels.hpp"

namespace tagasl::kernels {

namespace {

const Table kScalar{&scalar::asl_tagged, &scalar::tif, &scalar::break_even_pi};
#if defined(TAGASL_HAVE_AVX2)
const Table kAvx2{&avx2::asl_tagged, &avx2::tif, &avx2::break_even_pi};
#endif

bool cpu_has_avx2() {
#if defined(TAGASL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Backend>& active() {
    static std::atomic<Backend> backend{detected_backend()};
    return backend;
}

void check_sizes(std::size_t a, std::size_t b, std::size_t c) {
    if (a != c || b != c) {
        throw Error(ErrorCode::InvalidArgument, "kernel input and output spans differ in length");
    }
}

}  // namespace

const char* to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_supported(Backend b) {
    return b == Backend::Scalar || (b == Backend::Avx2 && cpu_has_avx2());
}

Backend detected_backend() { return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar; }

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
    if (!backend_supported(b)) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string("kernel backend not available: ") + to_string(b));
    }
    active().store(b, std::memory_order_relaxed);
}

const Table& table(Backend b) {
    if (!backend_supported(b)) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string("kernel backend not available: ") + to_string(b));
    }
#if defined(TAGASL_HAVE_AVX2)
    if (b == Backend::Avx2) {
        return kAvx2;
    }
#endif
    return kScalar;
}

void asl_tagged(double half_n, double t, double p, std::span<const double> tau,
                std::span<const double> pi, std::span<double> out) {
    check_sizes(tau.size(), pi.size(), out.size());
    table(active_backend()).asl_tagged(half_n, t, p, tau, pi, out);
}

void tif(double t, double p, std::span<const double> tau, std::span<const double> pi,
         std::span<double> out) {
    check_sizes(tau.size(), pi.size(), out.size());
    table(active_backend()).tif(t, p, tau, pi, out);
}

void break_even_pi(double t, std::span<const double> p, std::span<const double> tau,
                   std::span<double> pi_out, std::span<std::uint8_t> kind_out) {
    check_sizes(p.size(), tau.size(), pi_out.size());
    check_sizes(kind_out.size(), kind_out.size(), pi_out.size());
    table(active_backend()).break_even_pi(t, p, tau, pi_out, kind_out);
}

}  // namespace tagasl::kernels
