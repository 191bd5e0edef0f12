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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace vqe::kernels {

// Statevector inner loops. Amplitudes are interleaved std::complex<double>,
// index i holds basis state i, bit q of i is qubit q. n_amps is a power of
// two. Every kernel has a scalar reference implementation and may have SIMD
// variants; variants must agree with the reference to tight tolerance on all
// inputs (enforced by tests, selected at runtime).
struct KernelSet {
    const char* name;

    // amps[i] *= (bit target of i) ? d1 : d0
    void (*apply_diag1q)(std::complex<double>* amps, std::size_t n_amps, unsigned target,
                         std::complex<double> d0, std::complex<double> d1);

    // (a0, a1) -> (u00 a0 + u01 a1, u10 a0 + u11 a1) over pairs split by the
    // target bit; u is row-major {u00, u01, u10, u11}.
    void (*apply_mix1q)(std::complex<double>* amps, std::size_t n_amps, unsigned target,
                        const std::complex<double>* u);

    // swap amps[i] and amps[i ^ (1<<target)] where bit control of i is set
    void (*apply_cnot)(std::complex<double>* amps, std::size_t n_amps, unsigned control,
                       unsigned target);

    // <psi|P|psi> for the Pauli string encoded as masks: x_mask marks X or Y
    // positions, y_mask marks Y, sign_mask marks Z or Y. Unit coefficient.
    double (*pauli_expval)(const std::complex<double>* amps, std::size_t n_amps,
                           std::uint64_t x_mask, std::uint64_t y_mask, std::uint64_t sign_mask);

    double (*norm_sq)(const std::complex<double>* amps, std::size_t n_amps);
};

const KernelSet& scalar_kernels();

// Kernel sets usable on this machine, scalar first. SIMD sets appear only
// when compiled in and supported by the CPU at runtime.
std::vector<const KernelSet*> available_kernels();

// Active set used by the simulator. Defaults to the widest available variant;
// the VQE_KERNELS environment variable (scalar | avx2 | auto) overrides the
// default at startup.
const KernelSet& active_kernels();

// Returns false if `name` is not available. "auto" restores the default.
bool set_active_kernels(std::string_view name);

}  // namespace vqe::kernels
