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

#include "vqe/ansatz.hpp"

#include <stdexcept>
#include <string>

namespace vqe {

Statevector prepare_state(const AnsatzSpec& spec, std::span<const double> theta) {
    if (spec.layers < 1) throw std::invalid_argument("layer count must be positive");
    if (theta.size() != static_cast<std::size_t>(spec.param_count())) {
        throw std::invalid_argument("parameter count " + std::to_string(theta.size()) +
                                    " does not match ansatz size " +
                                    std::to_string(spec.param_count()));
    }
    Statevector sv(spec.n_qubits);
    const int n = spec.n_qubits;
    std::size_t p = 0;
    for (int l = 0; l < spec.layers; ++l) {
        for (int q = 0; q < n; ++q) {
            sv.rz(q, theta[p++]);
            sv.ry(q, theta[p++]);
            sv.rz(q, theta[p++]);
        }
        for (int q = 0; q + 1 < n; ++q) sv.cnot(q, q + 1);
        if (spec.entangler == Entangler::Ring && n >= 3) sv.cnot(n - 1, 0);
    }
    return sv;
}

}  // namespace vqe
