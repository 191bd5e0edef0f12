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
#include <span>
#include <vector>

#include "vqe/pauli.hpp"

namespace vqe {

// Pure state of n qubits, 2^n interleaved complex amplitudes, bit q of the
// index is qubit q. Gate application goes through the runtime-selected
// kernel set.
class Statevector {
  public:
    // |0...0>
    explicit Statevector(int n_qubits);

    // Takes amplitudes as given (size must be a power of two); callers are
    // responsible for normalization.
    static Statevector from_amplitudes(std::vector<std::complex<double>> amps);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::complex<double>* data() { return amps_.data(); }
    const std::complex<double>* data() const { return amps_.data(); }

    void rz(int qubit, double angle);
    void ry(int qubit, double angle);
    void h(int qubit);
    void sdg(int qubit);
    void cnot(int control, int target);

    double norm_sq() const;

    // <psi|P|psi> for a unit-coefficient Pauli string of matching length.
    double pauli_expectation(const PauliString& p) const;

  private:
    Statevector() = default;
    void check_qubit(int qubit) const;

    int n_qubits_ = 0;
    std::vector<std::complex<double>> amps_;
};

}  // namespace vqe
