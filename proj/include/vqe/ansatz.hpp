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

#include <span>
#include <vector>

#include "vqe/statevector.hpp"

namespace vqe {

enum class Entangler {
    Linear,  // CNOT(q, q+1) for q = 0..n-2
    Ring,    // linear ladder plus CNOT(n-1, 0) when n >= 3
};

// Hardware-efficient layered circuit. Each layer applies Rz, Ry, Rz to every
// qubit and then the entangling ladder. Parameters are consumed layer-major,
// qubit-minor, with the three rotation angles (Rz, Ry, Rz) innermost:
// theta[3*(l*n + q) + r].
struct AnsatzSpec {
    int n_qubits = 1;
    int layers = 1;
    Entangler entangler = Entangler::Linear;

    int param_count() const { return 3 * n_qubits * layers; }
};

using ParamVector = std::vector<double>;

// |0...0> evolved through the circuit. Throws std::invalid_argument when the
// parameter count does not match spec.param_count().
Statevector prepare_state(const AnsatzSpec& spec, std::span<const double> theta);

}  // namespace vqe
