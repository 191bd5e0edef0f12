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

#include "vqe/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vqe {

bool qwc_commute(const PauliString& a, const PauliString& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("qwc_commute: word lengths differ (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    for (std::size_t q = 0; q < a.size(); ++q) {
        const Pauli pa = a.op(q);
        const Pauli pb = b.op(q);
        if (pa != Pauli::I && pb != Pauli::I && pa != pb) return false;
    }
    return true;
}

namespace {

// A term fits a group iff it never conflicts with the accumulated basis.
bool fits_basis(const std::vector<Pauli>& basis, const PauliString& s) {
    for (std::size_t q = 0; q < s.size(); ++q) {
        const Pauli ps = s.op(q);
        if (ps != Pauli::I && basis[q] != Pauli::I && basis[q] != ps) return false;
    }
    return true;
}

}  // namespace

GroupingPlan group_qwc(const Hamiltonian& h) {
    std::vector<std::size_t> visit(h.num_terms());
    std::iota(visit.begin(), visit.end(), std::size_t{0});
    std::stable_sort(visit.begin(), visit.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(h.terms[a].coeff) > std::abs(h.terms[b].coeff);
    });

    GroupingPlan plan;
    std::vector<std::vector<Pauli>> bases;  // mutable accumulation per group
    const std::size_t n = static_cast<std::size_t>(h.n_qubits);

    for (std::size_t idx : visit) {
        const PauliString& s = h.terms[idx].string;
        bool placed = false;
        for (std::size_t g = 0; g < bases.size(); ++g) {
            if (fits_basis(bases[g], s)) {
                plan.groups[g].push_back(idx);
                for (std::size_t q = 0; q < n; ++q) {
                    if (s.op(q) != Pauli::I) bases[g][q] = s.op(q);
                }
                placed = true;
                break;
            }
        }
        if (!placed) {
            plan.groups.push_back({idx});
            std::vector<Pauli> basis(n, Pauli::I);
            for (std::size_t q = 0; q < n; ++q) basis[q] = s.op(q);
            bases.push_back(std::move(basis));
        }
    }

    plan.shared_basis.reserve(bases.size());
    for (auto& b : bases) plan.shared_basis.emplace_back(std::move(b));
    return plan;
}

}  // namespace vqe
