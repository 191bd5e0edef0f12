// Copyright 2026 The vqebench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2 kernels. One __m256d holds two interleaved complex<double> values
// [re0, im0, re1, im1]. Compiled with -mavx2 and selected at runtime only
// when the CPU supports it; states with fewer than 4 amplitudes fall back to
// the scalar reference.

#include "vqe/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>

namespace vqe::kernels {
namespace {

using cd = std::complex<double>;

inline double* re(cd* p) { return reinterpret_cast<double*>(p); }
inline const double* re(const cd* p) { return reinterpret_cast<const double*>(p); }

// [re0, im0, re1, im1] -> [im0, re0, im1, re1]
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0x5); }

// swap the two complex values held in one register
inline __m256d swap_halves(__m256d v) { return _mm256_permute2f128_pd(v, v, 0x01); }

// v * c for a complex scalar c, both complex values at once
inline __m256d cmul_scalar(__m256d v, __m256d cr, __m256d ci) {
    return _mm256_addsub_pd(_mm256_mul_pd(v, cr), _mm256_mul_pd(swap_re_im(v), ci));
}

// elementwise complex product of two interleaved registers
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d t0 = _mm256_mul_pd(a, _mm256_movedup_pd(b));
    const __m256d t1 = _mm256_mul_pd(swap_re_im(a), _mm256_permute_pd(b, 0xF));
    return _mm256_addsub_pd(t0, t1);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void avx2_apply_diag1q(cd* amps, std::size_t n_amps, unsigned target, cd d0, cd d1) {
    if (n_amps < 4) {
        scalar_kernels().apply_diag1q(amps, n_amps, target, d0, d1);
        return;
    }
    if (target == 0) {
        const __m256d dv = _mm256_set_pd(d1.imag(), d1.real(), d0.imag(), d0.real());
        for (std::size_t i = 0; i < n_amps; i += 2) {
            _mm256_storeu_pd(re(amps + i), cmul(_mm256_loadu_pd(re(amps + i)), dv));
        }
        return;
    }
    const std::size_t bit = std::size_t{1} << target;
    const __m256d r0 = _mm256_set1_pd(d0.real()), i0 = _mm256_set1_pd(d0.imag());
    const __m256d r1 = _mm256_set1_pd(d1.real()), i1 = _mm256_set1_pd(d1.imag());
    for (std::size_t base = 0; base < n_amps; base += bit << 1) {
        for (std::size_t i = base; i < base + bit; i += 2) {
            _mm256_storeu_pd(re(amps + i), cmul_scalar(_mm256_loadu_pd(re(amps + i)), r0, i0));
        }
        for (std::size_t i = base + bit; i < base + (bit << 1); i += 2) {
            _mm256_storeu_pd(re(amps + i), cmul_scalar(_mm256_loadu_pd(re(amps + i)), r1, i1));
        }
    }
}

void avx2_apply_mix1q(cd* amps, std::size_t n_amps, unsigned target, const cd* u) {
    if (n_amps < 4) {
        scalar_kernels().apply_mix1q(amps, n_amps, target, u);
        return;
    }
    const __m256d u00r = _mm256_set1_pd(u[0].real()), u00i = _mm256_set1_pd(u[0].imag());
    const __m256d u01r = _mm256_set1_pd(u[1].real()), u01i = _mm256_set1_pd(u[1].imag());
    const __m256d u10r = _mm256_set1_pd(u[2].real()), u10i = _mm256_set1_pd(u[2].imag());
    const __m256d u11r = _mm256_set1_pd(u[3].real()), u11i = _mm256_set1_pd(u[3].imag());
    if (target == 0) {
        // pairs are adjacent; regroup two pairs so lows/highs share registers
        for (std::size_t i = 0; i < n_amps; i += 4) {
            const __m256d ra = _mm256_loadu_pd(re(amps + i));
            const __m256d rb = _mm256_loadu_pd(re(amps + i + 2));
            const __m256d a0 = _mm256_permute2f128_pd(ra, rb, 0x20);
            const __m256d a1 = _mm256_permute2f128_pd(ra, rb, 0x31);
            const __m256d n0 = _mm256_add_pd(cmul_scalar(a0, u00r, u00i), cmul_scalar(a1, u01r, u01i));
            const __m256d n1 = _mm256_add_pd(cmul_scalar(a0, u10r, u10i), cmul_scalar(a1, u11r, u11i));
            _mm256_storeu_pd(re(amps + i), _mm256_permute2f128_pd(n0, n1, 0x20));
            _mm256_storeu_pd(re(amps + i + 2), _mm256_permute2f128_pd(n0, n1, 0x31));
        }
        return;
    }
    const std::size_t bit = std::size_t{1} << target;
    for (std::size_t base = 0; base < n_amps; base += bit << 1) {
        for (std::size_t i = base; i < base + bit; i += 2) {
            const __m256d a0 = _mm256_loadu_pd(re(amps + i));
            const __m256d a1 = _mm256_loadu_pd(re(amps + i + bit));
            const __m256d n0 = _mm256_add_pd(cmul_scalar(a0, u00r, u00i), cmul_scalar(a1, u01r, u01i));
            const __m256d n1 = _mm256_add_pd(cmul_scalar(a0, u10r, u10i), cmul_scalar(a1, u11r, u11i));
            _mm256_storeu_pd(re(amps + i), n0);
            _mm256_storeu_pd(re(amps + i + bit), n1);
        }
    }
}

inline void swap_runs(cd* p, cd* q, std::size_t len) {
    for (std::size_t i = 0; i < len; i += 2) {
        const __m256d a = _mm256_loadu_pd(re(p + i));
        const __m256d b = _mm256_loadu_pd(re(q + i));
        _mm256_storeu_pd(re(p + i), b);
        _mm256_storeu_pd(re(q + i), a);
    }
}

void avx2_apply_cnot(cd* amps, std::size_t n_amps, unsigned control, unsigned target) {
    if (n_amps < 4) {
        scalar_kernels().apply_cnot(amps, n_amps, control, target);
        return;
    }
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    if (target == 0) {
        // partners sit in one register; control >= 1 is uniform across it
        for (std::size_t i = 0; i < n_amps; i += 2) {
            if (i & cbit) {
                const __m256d v = _mm256_loadu_pd(re(amps + i));
                _mm256_storeu_pd(re(amps + i), swap_halves(v));
            }
        }
        return;
    }
    if (control > target) {
        // control bit is constant across each target block
        for (std::size_t base = 0; base < n_amps; base += tbit << 1) {
            if (base & cbit) swap_runs(amps + base, amps + base + tbit, tbit);
        }
        return;
    }
    // control < target: sub-runs of cbit complexes inside each target block
    for (std::size_t base = 0; base < n_amps; base += tbit << 1) {
        if (cbit >= 2) {
            for (std::size_t sub = base + cbit; sub < base + tbit; sub += cbit << 1) {
                swap_runs(amps + sub, amps + sub + tbit, cbit);
            }
        } else {
            for (std::size_t i = base + 1; i < base + tbit; i += 2) {
                const __m128d a = _mm_loadu_pd(re(amps + i));
                const __m128d b = _mm_loadu_pd(re(amps + i + tbit));
                _mm_storeu_pd(re(amps + i), b);
                _mm_storeu_pd(re(amps + i + tbit), a);
            }
        }
    }
}

double avx2_pauli_expval(const cd* amps, std::size_t n_amps, std::uint64_t x_mask,
                         std::uint64_t y_mask, std::uint64_t sign_mask) {
    if (n_amps < 4) {
        return scalar_kernels().pauli_expval(amps, n_amps, x_mask, y_mask, sign_mask);
    }
    const bool imag_part = (std::popcount(y_mask) & 1) != 0;
    const std::uint64_t high_sign = sign_mask & ~std::uint64_t{3};
    const unsigned perm = static_cast<unsigned>(x_mask & 3);
    const std::uint64_t x_high = x_mask & ~std::uint64_t{3};

    // per-lane sign flips for index bits 0..1, duplicated over re/im lanes
    const auto lane_flip = [&](std::uint64_t j) -> double {
        return (std::popcount(j & sign_mask & 3) & 1) ? -0.0 : 0.0;
    };
    __m256d flip_lo = _mm256_set_pd(lane_flip(1), lane_flip(1), lane_flip(0), lane_flip(0));
    __m256d flip_hi = _mm256_set_pd(lane_flip(3), lane_flip(3), lane_flip(2), lane_flip(2));
    if (imag_part) {
        // extra (+,-) pattern so that hsum yields sum of br*ai - bi*ar
        const __m256d alt = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
        flip_lo = _mm256_xor_pd(flip_lo, alt);
        flip_hi = _mm256_xor_pd(flip_hi, alt);
    }
    const __m256d negall = _mm256_set1_pd(-0.0);

    __m256d acc = _mm256_setzero_pd();
    for (std::size_t base = 0; base < n_amps; base += 4) {
        __m256d a0 = _mm256_loadu_pd(re(amps + base));
        __m256d a1 = _mm256_loadu_pd(re(amps + base + 2));
        const std::size_t pb = base ^ x_high;
        __m256d b0, b1;
        switch (perm) {
            case 0:
                b0 = _mm256_loadu_pd(re(amps + pb));
                b1 = _mm256_loadu_pd(re(amps + pb + 2));
                break;
            case 1:
                b0 = swap_halves(_mm256_loadu_pd(re(amps + pb)));
                b1 = swap_halves(_mm256_loadu_pd(re(amps + pb + 2)));
                break;
            case 2:
                b0 = _mm256_loadu_pd(re(amps + pb + 2));
                b1 = _mm256_loadu_pd(re(amps + pb));
                break;
            default:
                b0 = swap_halves(_mm256_loadu_pd(re(amps + pb + 2)));
                b1 = swap_halves(_mm256_loadu_pd(re(amps + pb)));
                break;
        }
        if (imag_part) {
            a0 = swap_re_im(a0);
            a1 = swap_re_im(a1);
        }
        __m256d m0 = flip_lo, m1 = flip_hi;
        if (std::popcount(base & high_sign) & 1) {
            m0 = _mm256_xor_pd(m0, negall);
            m1 = _mm256_xor_pd(m1, negall);
        }
        acc = _mm256_add_pd(acc, _mm256_xor_pd(_mm256_mul_pd(a0, b0), m0));
        acc = _mm256_add_pd(acc, _mm256_xor_pd(_mm256_mul_pd(a1, b1), m1));
    }
    const double total = hsum(acc);
    switch (std::popcount(y_mask) % 4) {
        case 0: return total;
        case 1: return -total;
        case 2: return -total;
        default: return total;
    }
}

double avx2_norm_sq(const cd* amps, std::size_t n_amps) {
    if (n_amps < 4) return scalar_kernels().norm_sq(amps, n_amps);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n_amps; i += 2) {
        const __m256d v = _mm256_loadu_pd(re(amps + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    return hsum(acc);
}

}  // namespace

const KernelSet& avx2_kernels() {
    static const KernelSet set{
        "avx2",          avx2_apply_diag1q, avx2_apply_mix1q,
        avx2_apply_cnot, avx2_pauli_expval, avx2_norm_sq,
    };
    return set;
}

}  // namespace vqe::kernels

#endif  // __AVX2__
