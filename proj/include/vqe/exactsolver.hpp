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
#include <vector>

#include "vqe/pauli.hpp"

namespace vqe {

struct GroundTruth {
    double energy = 0.0;
    int n_qubits = 0;
};

// Smallest eigenvalue of the full operator. Dense Hermitian diagonalization
// up to 10 qubits, matrix-free Lanczos with full reorthogonalization for
// 11..14. Throws std::domain_error beyond 14 qubits and std::runtime_error if
// the iterative path fails to converge.
GroundTruth ground_state_energy(const Hamiltonian& h);

// Internals exposed for cross-validation in tests.
struct EigenPair {
    double value = 0.0;
    std::vector<std::complex<double>> vector;
};

EigenPair smallest_eigenpair_dense(const Hamiltonian& h);
EigenPair smallest_eigenpair_lanczos(const Hamiltonian& h, int max_iterations = 400,
                                     double rel_tol = 1e-10);

// out = H * in, accumulated term by term without materializing the matrix.
void apply_hamiltonian(const Hamiltonian& h, const std::vector<std::complex<double>>& in,
                       std::vector<std::complex<double>>& out);

}  // namespace vqe
