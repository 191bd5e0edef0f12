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

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "vqe/partition.hpp"
#include "vqe/rng.hpp"

using namespace vqe;

namespace {

// M single-qubit terms with distinct coefficients so index identity is easy
// to track through reorderings.
Hamiltonian make_terms(std::size_t m) {
    Hamiltonian h;
    h.n_qubits = 1;
    for (std::size_t i = 0; i < m; ++i) {
        h.terms.push_back(Term{static_cast<double>(i + 1), PauliString::parse("Z")});
    }
    return h;
}

// Disjoint cover of 0..M-1 with balanced block sizes.
void check_valid_partition(const Partition& p, std::size_t m, int k) {
    REQUIRE(p.num_workers() == k);
    const std::size_t base = m / static_cast<std::size_t>(k);
    const std::size_t extra = m % static_cast<std::size_t>(k);
    std::set<std::size_t> seen;
    for (std::size_t w = 0; w < p.assignments.size(); ++w) {
        const std::size_t want = base + (w < extra ? 1 : 0);
        CHECK(p.assignments[w].size() == want);
        for (std::size_t idx : p.assignments[w]) {
            CHECK(idx < m);
            CHECK(seen.insert(idx).second);  // no duplicates across workers
        }
    }
    CHECK(seen.size() == m);
}

}  // namespace

TEST_CASE("static partition: contiguous balanced blocks in file order") {
    const Hamiltonian h = make_terms(631);
    const Partition p = static_partition(h, 32);
    check_valid_partition(p, 631, 32);
    // 631 = 32*19 + 23: first 23 workers get 20 terms, the rest 19.
    for (int w = 0; w < 32; ++w) {
        CHECK(p.assignments[static_cast<std::size_t>(w)].size() == (w < 23 ? 20u : 19u));
    }
    // contiguity and order
    std::size_t expect = 0;
    for (const auto& slice : p.assignments) {
        for (std::size_t idx : slice) CHECK(idx == expect++);
    }
}

TEST_CASE("static partition: single worker owns everything") {
    const Hamiltonian h = make_terms(7);
    const Partition p = static_partition(h, 1);
    check_valid_partition(p, 7, 1);
    CHECK(p.assignments[0].front() == 0);
    CHECK(p.assignments[0].back() == 6);
}

TEST_CASE("static partition: coefficient-descending order, stable ties") {
    Hamiltonian h;
    h.n_qubits = 1;
    const double coeffs[] = {0.5, -2.0, 0.5, 1.0};  // |c|: 0.5, 2.0, 0.5, 1.0
    for (double c : coeffs) h.terms.push_back(Term{c, PauliString::parse("X")});
    const Partition p = static_partition(h, 2, StaticOrder::CoeffDesc, 0);
    // order by |coeff| desc with index ties stable: 1 (2.0), 3 (1.0), 0, 2
    REQUIRE(p.assignments[0].size() == 2);
    CHECK(p.assignments[0][0] == 1);
    CHECK(p.assignments[0][1] == 3);
    CHECK(p.assignments[1][0] == 0);
    CHECK(p.assignments[1][1] == 2);
}

TEST_CASE("static partition: random-once order is a seed-stable permutation") {
    const Hamiltonian h = make_terms(100);
    const Partition a = static_partition(h, 8, StaticOrder::RandomOnce, 5);
    const Partition b = static_partition(h, 8, StaticOrder::RandomOnce, 5);
    const Partition c = static_partition(h, 8, StaticOrder::RandomOnce, 6);
    check_valid_partition(a, 100, 8);
    CHECK(a.assignments == b.assignments);
    CHECK(a.assignments != c.assignments);
}

TEST_CASE("worker count bounds are enforced") {
    const Hamiltonian h = make_terms(5);
    CHECK_THROWS_AS(static_partition(h, 0), std::invalid_argument);
    CHECK_THROWS_AS(static_partition(h, -1), std::invalid_argument);
    CHECK_THROWS_AS(static_partition(h, 6), std::invalid_argument);
    CHECK_THROWS_AS(shuffle_partition(h, 6, 0, 0, 0), std::invalid_argument);
    CHECK_NOTHROW(static_partition(h, 5));
}

TEST_CASE("shuffle partition: valid, deterministic in (seed, t, w)") {
    const Hamiltonian h = make_terms(631);
    const Partition p1 = shuffle_partition(h, 32, 7, 3, 2);
    const Partition p2 = shuffle_partition(h, 32, 7, 3, 2);
    check_valid_partition(p1, 631, 32);
    CHECK(p1.assignments == p2.assignments);

    // any key word change redraws the permutation
    CHECK(p1.assignments != shuffle_partition(h, 32, 8, 3, 2).assignments);
    CHECK(p1.assignments != shuffle_partition(h, 32, 7, 4, 2).assignments);
    CHECK(p1.assignments != shuffle_partition(h, 32, 7, 3, 3).assignments);
}

TEST_CASE("shuffle partition: worker count does not influence the permutation") {
    // The permutation is keyed by (seed, t, w) only, so the concatenated
    // slices must be the same sequence for any worker count.
    const Hamiltonian h = make_terms(57);
    std::vector<std::size_t> flat4, flat8;
    for (const auto& s : shuffle_partition(h, 4, 11, 2, 9).assignments) {
        flat4.insert(flat4.end(), s.begin(), s.end());
    }
    for (const auto& s : shuffle_partition(h, 8, 11, 2, 9).assignments) {
        flat8.insert(flat8.end(), s.begin(), s.end());
    }
    CHECK(flat4 == flat8);
}

TEST_CASE("shuffle partition: every term lands on every worker uniformly") {
    // Frequency check over independent permutations: term i is assigned to
    // worker k with probability 1/K. With R draws the empirical rate should
    // sit within a generous band around 1/K.
    const std::size_t m = 60;
    const int k = 4;
    const int rounds = 2000;
    const Hamiltonian h = make_terms(m);
    std::vector<std::vector<int>> counts(m, std::vector<int>(static_cast<std::size_t>(k), 0));
    for (int t = 0; t < rounds; ++t) {
        const Partition p =
            shuffle_partition(h, k, 99, static_cast<std::uint64_t>(t), 0);
        for (int w = 0; w < k; ++w) {
            for (std::size_t idx : p.assignments[static_cast<std::size_t>(w)]) {
                ++counts[idx][static_cast<std::size_t>(w)];
            }
        }
    }
    const double expected = static_cast<double>(rounds) / k;  // 500
    for (std::size_t i = 0; i < m; ++i) {
        for (int w = 0; w < k; ++w) {
            const double rate = counts[i][static_cast<std::size_t>(w)] / expected;
            CHECK(rate > 0.85);
            CHECK(rate < 1.15);
        }
    }
}

TEST_CASE("derived keys separate domains") {
    using namespace vqe::rng;
    CHECK(derive_key({1, kDomainPerm, 0, 0}) != derive_key({1, kDomainStaticPerm, 0, 0}));
    CHECK(derive_key({1, kDomainPerm, 0, 0}) != derive_key({1, kDomainPerm, 0, 1}));
    CHECK(derive_key({1, kDomainPerm, 0}) != derive_key({1, kDomainPerm, 0, 0}));
    // same words, same key
    CHECK(derive_key({2, kDomainWorker, 5}) == derive_key({2, kDomainWorker, 5}));
}

TEST_CASE("stream: next_below is unbiased over small ranges") {
    rng::Stream s(123);
    std::vector<int> hist(5, 0);
    const int draws = 50000;
    for (int i = 0; i < draws; ++i) ++hist[s.next_below(5)];
    for (int c : hist) {
        CHECK(std::abs(c - draws / 5) < draws / 100);  // within 1% of uniform
    }
}
