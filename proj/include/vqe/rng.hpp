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
#include <initializer_list>

namespace vqe::rng {

// Counter-based randomness built on the splitmix64 finalizer. Every stream is
// a pure function of its 64-bit key, and keys are derived by folding word
// lists, so any process that folds the same words gets the same stream with no
// communication. Results are identical across platforms and thread schedules.

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Folds key words into a stream key. Word order matters.
constexpr std::uint64_t derive_key(std::initializer_list<std::uint64_t> words) {
    std::uint64_t k = 0x243f6a8885a308d3ULL;
    for (std::uint64_t w : words) {
        k = mix(k + kGolden + w);
    }
    return k;
}

// Domain tags keep logically independent streams from colliding even when
// their remaining key words coincide.
enum Domain : std::uint64_t {
    kDomainInit = 1,        // initial parameter vector
    kDomainPerm = 2,        // shared shuffle permutations, keyed (t, w)
    kDomainWorker = 3,      // per-worker measurement streams, keyed rank
    kDomainServer = 4,      // server-side aggregation choices
    kDomainStaticPerm = 5,  // one-off static partition ordering
    kDomainGradEval = 6,    // per-evaluation substreams inside a gradient
};

class Stream {
  public:
    explicit Stream(std::uint64_t key) : state_(mix(key ^ kGolden)) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix(state_);
    }

    // Uniform in [0, 1), 53 significant bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform in [0, bound) by bitmask rejection. bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1);
        for (;;) {
            std::uint64_t r = next_u64() & mask;
            if (r < bound) return r;
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace vqe::rng
