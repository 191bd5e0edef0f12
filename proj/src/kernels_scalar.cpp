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

// Reference kernels. Kept deliberately plain: these define the semantics the
// SIMD variants are tested against.

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>

#include "vqe/kernels.hpp"

namespace vqe::kernels {
namespace {

using cd = std::complex<double>;

void scalar_apply_diag1q(cd* amps, std::size_t n_amps, unsigned target, cd d0, cd d1) {
    const std::size_t bit = std::size_t{1} << target;
    for (std::size_t i = 0; i < n_amps; ++i) {
        amps[i] *= (i & bit) ? d1 : d0;
    }
}

void scalar_apply_mix1q(cd* amps, std::size_t n_amps, unsigned target, const cd* u) {
    const std::size_t bit = std::size_t{1} << target;
    for (std::size_t base = 0; base < n_amps; base += bit << 1) {
        for (std::size_t i = base; i < base + bit; ++i) {
            const cd a0 = amps[i];
            const cd a1 = amps[i | bit];
            amps[i] = u[0] * a0 + u[1] * a1;
            amps[i | bit] = u[2] * a0 + u[3] * a1;
        }
    }
}

void scalar_apply_cnot(cd* amps, std::size_t n_amps, unsigned control, unsigned target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < n_amps; ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amps[i], amps[i | tbit]);
        }
    }
}

// P|i> = ipow(|Y|) * (-1)^popcount(i & sign_mask) * |i ^ x_mask>, so the
// expectation is the real part of ipow(|Y|) * sum_i conj(a[i^x]) s(i) a[i].
double scalar_pauli_expval(const cd* amps, std::size_t n_amps, std::uint64_t x_mask,
                           std::uint64_t y_mask, std::uint64_t sign_mask) {
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n_amps; ++i) {
        const double s = (std::popcount(i & sign_mask) & 1) ? -1.0 : 1.0;
        acc += std::conj(amps[i ^ x_mask]) * (s * amps[i]);
    }
    switch (std::popcount(y_mask) % 4) {
        case 0: return acc.real();
        case 1: return -acc.imag();
        case 2: return -acc.real();
        default: return acc.imag();
    }
}

double scalar_norm_sq(const cd* amps, std::size_t n_amps) {
    double s = 0.0;
    for (std::size_t i = 0; i < n_amps; ++i) s += std::norm(amps[i]);
    return s;
}

}  // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet set{
        "scalar",          scalar_apply_diag1q, scalar_apply_mix1q,
        scalar_apply_cnot, scalar_pauli_expval, scalar_norm_sq,
    };
    return set;
}

}  // namespace vqe::kernels
