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
#include <span>
#include <vector>

#include "vqe/grouping.hpp"
#include "vqe/pauli.hpp"
#include "vqe/rng.hpp"
#include "vqe/statevector.hpp"

namespace vqe {

// shots == 0 selects exact expectations everywhere; p is the depolarizing
// strength applied analytically to non-identity terms.
struct NoiseConfig {
    double p = 0.0;
    std::int64_t shots = 0;

    void validate() const;
};

// coeff * <psi|P|psi>, computed by in-place Pauli action on the amplitudes.
double expectation_exact(const Statevector& psi, const Term& term);

// Rotates a copy of the state into the term's eigenbasis, samples `shots`
// bitstrings, and averages the +-1 eigenvalues. Identity terms return their
// coefficient without sampling. shots >= 1.
double expectation_sampled(const Statevector& psi, const Term& term, std::int64_t shots,
                           rng::Stream& rng);

// Per-term values (aligned with h.terms) using one basis rotation per group
// and, when shots > 0, one shared batch of `shots` samples per group. With
// shots == 0 this reduces to exact per-term expectations.
std::vector<double> expectation_grouped(const Statevector& psi, const Hamiltonian& h,
                                        const GroupingPlan& plan, std::int64_t shots,
                                        rng::Stream& rng);

// (1 - p) * expectation for non-identity terms; identity terms pass through.
double apply_depolarizing(double expectation, const Term& term, double p);

// Loss contribution of the chosen terms under the noise model. When grouping
// is requested with shots > 0, measurement settings are shared within QWC
// groups of the slice. shot_counter, when given, is advanced by the number of
// circuit samples issued (identity terms and exact evaluations cost none).
double slice_loss(const Statevector& psi, const Hamiltonian& h,
                  std::span<const std::size_t> term_indices, const NoiseConfig& noise,
                  rng::Stream& rng, bool grouping = false,
                  std::uint64_t* shot_counter = nullptr);

}  // namespace vqe
