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

#include "vqe/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vqe/rng.hpp"

namespace vqe {

namespace {

void check_worker_count(std::size_t m, int workers) {
    if (workers < 1 || static_cast<std::size_t>(workers) > m) {
        throw std::invalid_argument("worker count " + std::to_string(workers) +
                                    " out of range for " + std::to_string(m) + " terms");
    }
}

// Contiguous blocks over `order`; the first M mod K blocks take the extra term.
Partition slice_blocks(const std::vector<std::size_t>& order, int workers) {
    const std::size_t m = order.size();
    const std::size_t k = static_cast<std::size_t>(workers);
    const std::size_t base = m / k;
    const std::size_t extra = m % k;
    Partition p;
    p.assignments.resize(k);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t len = base + (i < extra ? 1 : 0);
        p.assignments[i].assign(order.begin() + pos, order.begin() + pos + len);
        pos += len;
    }
    return p;
}

void fisher_yates(std::vector<std::size_t>& order, rng::Stream& stream) {
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = stream.next_below(i);
        std::swap(order[i - 1], order[j]);
    }
}

}  // namespace

Partition static_partition(const Hamiltonian& h, int workers) {
    return static_partition(h, workers, StaticOrder::FileOrder, 0);
}

Partition static_partition(const Hamiltonian& h, int workers, StaticOrder order,
                           std::uint64_t seed) {
    check_worker_count(h.num_terms(), workers);
    std::vector<std::size_t> idx(h.num_terms());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    switch (order) {
        case StaticOrder::FileOrder:
            break;
        case StaticOrder::CoeffDesc:
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return std::abs(h.terms[a].coeff) > std::abs(h.terms[b].coeff);
            });
            break;
        case StaticOrder::RandomOnce: {
            rng::Stream stream(rng::derive_key({seed, rng::kDomainStaticPerm}));
            fisher_yates(idx, stream);
            break;
        }
    }
    return slice_blocks(idx, workers);
}

Partition shuffle_partition(const Hamiltonian& h, int workers, std::uint64_t seed,
                            std::uint64_t t, std::uint64_t w) {
    check_worker_count(h.num_terms(), workers);
    std::vector<std::size_t> idx(h.num_terms());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    rng::Stream stream(rng::derive_key({seed, rng::kDomainPerm, t, w}));
    fisher_yates(idx, stream);
    return slice_blocks(idx, workers);
}

}  // namespace vqe
