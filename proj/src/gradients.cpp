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

#include "vqe/gradients.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace vqe {

BoundConstants bound_constants(const Hamiltonian& h, int param_count) {
    if (param_count < 1) throw std::invalid_argument("parameter count must be positive");
    BoundConstants c;
    c.G = static_cast<double>(param_count) * h.abs_coeff_sum();
    c.F1 = c.G;
    c.F2 = static_cast<double>(param_count) * c.G;
    return c;
}

namespace {

void check_theta(const AnsatzSpec& spec, std::span<const double> theta) {
    if (theta.size() != static_cast<std::size_t>(spec.param_count())) {
        throw std::invalid_argument("parameter count " + std::to_string(theta.size()) +
                                    " does not match ansatz size " +
                                    std::to_string(spec.param_count()));
    }
}

std::vector<std::size_t> all_indices(const Hamiltonian& h) {
    std::vector<std::size_t> idx(h.num_terms());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

}  // namespace

GradientVector parameter_shift_grad(const AnsatzSpec& spec, std::span<const double> theta,
                                    const Hamiltonian& h,
                                    std::span<const std::size_t> term_indices,
                                    const NoiseConfig& noise, std::uint64_t eval_key,
                                    bool grouping, std::uint64_t* shot_counter) {
    check_theta(spec, theta);
    noise.validate();
    const int P = spec.param_count();
    GradientVector grad(static_cast<std::size_t>(P), 0.0);

    // Identity terms cancel between the two shifted evaluations exactly, so
    // they are dropped up front and never consume samples.
    std::vector<std::size_t> active;
    active.reserve(term_indices.size());
    for (std::size_t idx : term_indices) {
        if (idx >= h.num_terms()) throw std::invalid_argument("term index outside Hamiltonian");
        if (!h.terms[idx].string.is_identity()) active.push_back(idx);
    }
    if (active.empty()) return grad;

    ParamVector shifted(theta.begin(), theta.end());
    for (int i = 0; i < P; ++i) {
        double value[2];
        for (int s = 0; s < 2; ++s) {
            const double shift = (s == 0 ? 1.0 : -1.0) * std::numbers::pi / 2.0;
            shifted[static_cast<std::size_t>(i)] = theta[static_cast<std::size_t>(i)] + shift;
            const Statevector psi = prepare_state(spec, shifted);
            rng::Stream eval_rng(
                rng::derive_key({eval_key, static_cast<std::uint64_t>(2 * i + s)}));
            value[s] = slice_loss(psi, h, active, noise, eval_rng, grouping, shot_counter);
        }
        shifted[static_cast<std::size_t>(i)] = theta[static_cast<std::size_t>(i)];
        grad[static_cast<std::size_t>(i)] = (value[0] - value[1]) / 2.0;
    }
    return grad;
}

GradientVector parameter_shift_grad(const AnsatzSpec& spec, std::span<const double> theta,
                                    const Hamiltonian& h, const NoiseConfig& noise,
                                    std::uint64_t eval_key) {
    const auto idx = all_indices(h);
    return parameter_shift_grad(spec, theta, h, idx, noise, eval_key);
}

GradientVector finite_difference_grad(const AnsatzSpec& spec, std::span<const double> theta,
                                      const Hamiltonian& h,
                                      std::span<const std::size_t> term_indices, double eps) {
    check_theta(spec, theta);
    if (!(eps > 0.0 && eps <= 1e-2)) {
        throw std::invalid_argument("finite-difference step must lie in (0, 1e-2]");
    }
    const NoiseConfig exact{};
    rng::Stream unused(0);
    const int P = spec.param_count();
    GradientVector grad(static_cast<std::size_t>(P), 0.0);
    ParamVector shifted(theta.begin(), theta.end());
    for (int i = 0; i < P; ++i) {
        double value[2];
        for (int s = 0; s < 2; ++s) {
            shifted[static_cast<std::size_t>(i)] =
                theta[static_cast<std::size_t>(i)] + (s == 0 ? eps : -eps);
            const Statevector psi = prepare_state(spec, shifted);
            value[s] = slice_loss(psi, h, term_indices, exact, unused);
        }
        shifted[static_cast<std::size_t>(i)] = theta[static_cast<std::size_t>(i)];
        grad[static_cast<std::size_t>(i)] = (value[0] - value[1]) / (2.0 * eps);
    }
    return grad;
}

namespace {

// Enumerates m-combinations of {0..M-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& comb, std::size_t m_total) {
    const std::size_t k = comb.size();
    for (std::size_t i = k; i-- > 0;) {
        if (comb[i] < m_total - (k - i)) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

Lemma1Result lemma1_check(const AnsatzSpec& spec, std::span<const double> theta,
                          const Hamiltonian& h, int m) {
    const std::size_t M = h.num_terms();
    if (M > 12) throw std::invalid_argument("lemma1_check limited to 12 terms");
    if (m < 1 || static_cast<std::size_t>(m) > M) {
        throw std::invalid_argument("subset size out of range");
    }
    const NoiseConfig exact{};
    const std::size_t P = static_cast<std::size_t>(spec.param_count());

    std::vector<std::size_t> comb(static_cast<std::size_t>(m));
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    GradientVector sum(P, 0.0);
    std::size_t count = 0;
    do {
        const GradientVector g = parameter_shift_grad(spec, theta, h, comb, exact, 0);
        for (std::size_t i = 0; i < P; ++i) sum[i] += g[i];
        ++count;
    } while (next_combination(comb, M));

    Lemma1Result res;
    res.subset_average.resize(P);
    for (std::size_t i = 0; i < P; ++i) {
        res.subset_average[i] = sum[i] / static_cast<double>(count);
    }
    const auto idx = all_indices(h);
    res.scaled_full = parameter_shift_grad(spec, theta, h, idx, exact, 0);
    const double scale = static_cast<double>(m) / static_cast<double>(M);
    for (double& v : res.scaled_full) v *= scale;
    return res;
}

}  // namespace vqe
