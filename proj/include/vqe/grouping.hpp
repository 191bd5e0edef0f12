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

#include <vector>

#include "vqe/pauli.hpp"

namespace vqe {

// Qubit-wise commutation: at every position the operators are equal or at
// least one is the identity. Throws std::invalid_argument on length mismatch.
bool qwc_commute(const PauliString& a, const PauliString& b);

// groups[g] holds term indices measured together; shared_basis[g] has, at each
// position, the unique non-identity operator appearing among the group's
// members there (I where all members are I). Every term index appears in
// exactly one group.
struct GroupingPlan {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<PauliString> shared_basis;

    std::size_t num_groups() const { return groups.size(); }
};

// Greedy first-fit coloring. Terms are visited in descending |coeff| order
// (ties by original index) and placed into the first group whose basis they
// are compatible with; group creation order is deterministic.
GroupingPlan group_qwc(const Hamiltonian& h);

}  // namespace vqe
