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

#include <cstdint>
#include <vector>

#include "vqe/pauli.hpp"

namespace vqe {

// Assignment of term indices (0-based into Hamiltonian::terms) to workers.
// assignments[k] is worker k's slice; slices are disjoint and cover every
// term exactly once. Slice sizes differ by at most one: the first M mod K
// workers get ceil(M/K) terms, the rest floor(M/K).
struct Partition {
    std::vector<std::vector<std::size_t>> assignments;

    int num_workers() const { return static_cast<int>(assignments.size()); }
};

enum class StaticOrder {
    FileOrder,   // terms sliced in file order (default)
    CoeffDesc,   // by descending |coeff|, ties by original index
    RandomOnce,  // one seeded permutation fixed for the whole run
};

// Contiguous static split used by the plain distributed scheme. Requires
// 1 <= K <= M.
Partition static_partition(const Hamiltonian& h, int workers);
Partition static_partition(const Hamiltonian& h, int workers, StaticOrder order,
                           std::uint64_t seed);

// Contiguous split of a Fisher-Yates permutation drawn from a stream keyed by
// (seed, t, w) only. Every worker that folds the same key words obtains the
// same permutation, so no coordination is needed to agree on the slices.
Partition shuffle_partition(const Hamiltonian& h, int workers, std::uint64_t seed,
                            std::uint64_t t, std::uint64_t w);

}  // namespace vqe
