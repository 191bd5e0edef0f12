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

#include "vqe/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "vqe/kernels.hpp"

namespace vqe {

namespace {
constexpr int kMaxQubits = 24;  // 2^24 amplitudes = 256 MiB, a sane ceiling
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range: " + std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

Statevector Statevector::from_amplitudes(std::vector<std::complex<double>> amps) {
    if (amps.empty() || !std::has_single_bit(amps.size())) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    Statevector sv;
    sv.n_qubits_ = std::bit_width(amps.size()) - 1;
    if (sv.n_qubits_ < 1) throw std::invalid_argument("need at least one qubit");
    sv.amps_ = std::move(amps);
    return sv;
}

void Statevector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                                std::to_string(n_qubits_) + " qubits");
    }
}

void Statevector::rz(int qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    kernels::active_kernels().apply_diag1q(amps_.data(), amps_.size(),
                                           static_cast<unsigned>(qubit), {c, -s}, {c, s});
}

void Statevector::ry(int qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    const std::complex<double> u[4] = {{c, 0}, {-s, 0}, {s, 0}, {c, 0}};
    kernels::active_kernels().apply_mix1q(amps_.data(), amps_.size(),
                                          static_cast<unsigned>(qubit), u);
}

void Statevector::h(int qubit) {
    check_qubit(qubit);
    const std::complex<double> u[4] = {
        {kInvSqrt2, 0}, {kInvSqrt2, 0}, {kInvSqrt2, 0}, {-kInvSqrt2, 0}};
    kernels::active_kernels().apply_mix1q(amps_.data(), amps_.size(),
                                          static_cast<unsigned>(qubit), u);
}

void Statevector::sdg(int qubit) {
    check_qubit(qubit);
    kernels::active_kernels().apply_diag1q(amps_.data(), amps_.size(),
                                           static_cast<unsigned>(qubit), {1, 0}, {0, -1});
}

void Statevector::cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("cnot control equals target");
    kernels::active_kernels().apply_cnot(amps_.data(), amps_.size(),
                                         static_cast<unsigned>(control),
                                         static_cast<unsigned>(target));
}

double Statevector::norm_sq() const {
    return kernels::active_kernels().norm_sq(amps_.data(), amps_.size());
}

double Statevector::pauli_expectation(const PauliString& p) const {
    if (p.size() != static_cast<std::size_t>(n_qubits_)) {
        throw std::invalid_argument("Pauli string length " + std::to_string(p.size()) +
                                    " does not match qubit count " + std::to_string(n_qubits_));
    }
    return kernels::active_kernels().pauli_expval(amps_.data(), amps_.size(), p.x_mask(),
                                                  p.y_mask(), p.z_mask());
}

}  // namespace vqe
