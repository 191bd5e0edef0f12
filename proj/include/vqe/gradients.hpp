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

#include "vqe/ansatz.hpp"
#include "vqe/expectation.hpp"
#include "vqe/pauli.hpp"

namespace vqe {

using GradientVector = std::vector<double>;

// Norm bounds used by the convergence analysis. With P parameters and
// coefficient 1-norm A = sum_i |alpha_i|: G = P*A bounds every gradient norm,
// F1 = G bounds first-order smoothness, F2 = P*G bounds the Hessian norm.
struct BoundConstants {
    double G = 0.0;
    double F1 = 0.0;
    double F2 = 0.0;
};

BoundConstants bound_constants(const Hamiltonian& h, int param_count);

// Exact derivative via the half-angle shift identity: every generator has
// +-1/2 eigenvalues, so dL/dt_i = (L(t + pi/2 e_i) - L(t - pi/2 e_i)) / 2.
// Sampled evaluations draw from substreams derived from eval_key in a fixed
// order (parameter index major, shift sign minor, + before -), which makes
// the result independent of evaluation order. Identity terms contribute
// nothing and are never sampled.
GradientVector parameter_shift_grad(const AnsatzSpec& spec, std::span<const double> theta,
                                    const Hamiltonian& h,
                                    std::span<const std::size_t> term_indices,
                                    const NoiseConfig& noise, std::uint64_t eval_key,
                                    bool grouping = false,
                                    std::uint64_t* shot_counter = nullptr);

// Convenience overload over every term of h.
GradientVector parameter_shift_grad(const AnsatzSpec& spec, std::span<const double> theta,
                                    const Hamiltonian& h, const NoiseConfig& noise,
                                    std::uint64_t eval_key);

// Central differences on exact noiseless expectations; eps in (0, 1e-2].
GradientVector finite_difference_grad(const AnsatzSpec& spec, std::span<const double> theta,
                                      const Hamiltonian& h,
                                      std::span<const std::size_t> term_indices, double eps);

// Exhaustive check of the unbiased-slice identity: the average over all
// C(M, m) m-term subsets of the subset-loss gradient equals (m/M) times the
// full gradient. Exact expectations only. Guarded to M <= 12.
struct Lemma1Result {
    GradientVector subset_average;
    GradientVector scaled_full;
};

Lemma1Result lemma1_check(const AnsatzSpec& spec, std::span<const double> theta,
                          const Hamiltonian& h, int m);

}  // namespace vqe
