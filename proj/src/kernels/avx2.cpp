// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

// Built with -mavx2 (no -mfma): every _mm256 op below rounds exactly like the
// corresponding scalar expression, so results match the scalar kernels bit
// for bit. The tails fall back to the scalar kernels.

#include <immintrin.h>

#include <cstddef>

#include "kernels_impl.hpp"
#include "tagasl/kernels.hpp"

namespace tagasl::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 4;
}

void asl_tagged(double half_n, double t, double p, std::span<const double> tau,
                std::span<const double> pi, std::span<double> out) {
    const std::size_t n = out.size();
    const std::size_t body = n - n % kLanes;
    const __m256d vh = _mm256_set1_pd(half_n);
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d vp = _mm256_set1_pd(p);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d ta = _mm256_loadu_pd(tau.data() + i);
        const __m256d pa = _mm256_loadu_pd(pi.data() + i);
        // (1 + t*tau) - p*pi, same association as the scalar expression
        __m256d a = _mm256_add_pd(one, _mm256_mul_pd(vt, ta));
        a = _mm256_sub_pd(a, _mm256_mul_pd(vp, pa));
        _mm256_storeu_pd(out.data() + i, _mm256_add_pd(_mm256_mul_pd(vh, a), half));
    }
    scalar::asl_tagged(half_n, t, p, tau.subspan(body), pi.subspan(body), out.subspan(body));
}

void tif(double t, double p, std::span<const double> tau, std::span<const double> pi,
         std::span<double> out) {
    const std::size_t n = out.size();
    const std::size_t body = n - n % kLanes;
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d vp = _mm256_set1_pd(p);
    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d ta = _mm256_loadu_pd(tau.data() + i);
        const __m256d pa = _mm256_loadu_pd(pi.data() + i);
        const __m256d lhs = _mm256_mul_pd(vt, _mm256_sub_pd(one, ta));
        const __m256d rhs = _mm256_mul_pd(vp, _mm256_sub_pd(one, pa));
        _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(lhs, rhs));
    }
    scalar::tif(t, p, tau.subspan(body), pi.subspan(body), out.subspan(body));
}

void break_even_pi(double t, std::span<const double> p, std::span<const double> tau,
                   std::span<double> pi_out, std::span<std::uint8_t> kind_out) {
    const std::size_t n = pi_out.size();
    const std::size_t body = n - n % kLanes;
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d pv = _mm256_loadu_pd(p.data() + i);
        const __m256d mass = _mm256_mul_pd(vt, _mm256_sub_pd(one, _mm256_loadu_pd(tau.data() + i)));
        const __m256d undef = _mm256_cmp_pd(pv, zero, _CMP_EQ_OQ);
        const __m256d always = _mm256_andnot_pd(undef, _mm256_cmp_pd(mass, pv, _CMP_GT_OQ));
        const __m256d special = _mm256_or_pd(undef, always);
        // Division by p == 0 lanes is discarded by the mask below.
        const __m256d root = _mm256_sub_pd(one, _mm256_div_pd(mass, pv));
        _mm256_storeu_pd(pi_out.data() + i, _mm256_andnot_pd(special, root));
        const int undef_bits = _mm256_movemask_pd(undef);
        const int always_bits = _mm256_movemask_pd(always);
        for (std::size_t l = 0; l < kLanes; ++l) {
            const int bit = 1 << l;
            kind_out[i + l] = (undef_bits & bit)    ? kUndefined
                              : (always_bits & bit) ? kAlwaysBeneficial
                                                    : kNumeric;
        }
    }
    scalar::break_even_pi(t, p.subspan(body), tau.subspan(body), pi_out.subspan(body),
                          kind_out.subspan(body));
}

}  // namespace tagasl::kernels::avx2
