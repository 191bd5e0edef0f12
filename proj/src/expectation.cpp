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

#include "vqe/expectation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "vqe/kernels.hpp"

namespace vqe {

void NoiseConfig::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
    }
    if (shots < 0) throw std::invalid_argument("shot count must be non-negative");
}

double expectation_exact(const Statevector& psi, const Term& term) {
    return term.coeff * psi.pauli_expectation(term.string);
}

double apply_depolarizing(double expectation, const Term& term, double p) {
    return term.string.is_identity() ? expectation : (1.0 - p) * expectation;
}

namespace {

// Maps each X to Z via H and each Y to Z via Sdg then H, so a computational
// basis measurement of the rotated state realizes the term's eigenbasis.
void rotate_to_z_basis(Statevector& sv, const PauliString& basis) {
    for (std::size_t q = 0; q < basis.size(); ++q) {
        switch (basis.op(q)) {
            case Pauli::X:
                sv.h(static_cast<int>(q));
                break;
            case Pauli::Y:
                sv.sdg(static_cast<int>(q));
                sv.h(static_cast<int>(q));
                break;
            default:
                break;
        }
    }
}

// Cumulative |amplitude|^2 table for inverse-transform sampling.
std::vector<double> cumulative_probs(const Statevector& sv) {
    const auto amps = sv.amplitudes();
    std::vector<double> cum(amps.size());
    double run = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        run += std::norm(amps[i]);
        cum[i] = run;
    }
    return cum;
}

std::size_t sample_bitstring(const std::vector<double>& cum, rng::Stream& rng) {
    const double u = rng.next_double() * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    return it == cum.end() ? cum.size() - 1 : static_cast<std::size_t>(it - cum.begin());
}

inline double eigenvalue_sign(std::size_t bits, std::uint64_t support) {
    return (std::popcount(bits & support) & 1) ? -1.0 : 1.0;
}

// Exact expectation of a Z-type operator on `support` for an already rotated
// state: a diagonal Pauli expectation.
double diagonal_expectation(const Statevector& sv, std::uint64_t support) {
    return kernels::active_kernels().pauli_expval(sv.data(), sv.size(), 0, 0, support);
}

}  // namespace

double expectation_sampled(const Statevector& psi, const Term& term, std::int64_t shots,
                           rng::Stream& rng) {
    if (shots < 1) throw std::invalid_argument("expectation_sampled requires shots >= 1");
    if (term.string.size() != static_cast<std::size_t>(psi.n_qubits())) {
        throw std::invalid_argument("term length does not match state qubit count");
    }
    if (term.string.is_identity()) return term.coeff;

    Statevector rotated = psi;
    rotate_to_z_basis(rotated, term.string);
    const std::vector<double> cum = cumulative_probs(rotated);
    const std::uint64_t support = term.string.support_mask();
    double sum = 0.0;
    for (std::int64_t s = 0; s < shots; ++s) {
        sum += eigenvalue_sign(sample_bitstring(cum, rng), support);
    }
    return term.coeff * sum / static_cast<double>(shots);
}

std::vector<double> expectation_grouped(const Statevector& psi, const Hamiltonian& h,
                                        const GroupingPlan& plan, std::int64_t shots,
                                        rng::Stream& rng) {
    if (plan.groups.size() != plan.shared_basis.size()) {
        throw std::invalid_argument("grouping plan is inconsistent");
    }
    std::vector<double> out(h.num_terms(), 0.0);
    std::vector<bool> seen(h.num_terms(), false);

    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        Statevector rotated = psi;
        rotate_to_z_basis(rotated, plan.shared_basis[g]);

        bool needs_samples = false;
        for (std::size_t idx : plan.groups[g]) {
            if (idx >= h.num_terms()) throw std::invalid_argument("term index outside Hamiltonian");
            if (seen[idx]) throw std::invalid_argument("term index appears in two groups");
            seen[idx] = true;
            if (!h.terms[idx].string.is_identity()) needs_samples = true;
        }

        if (shots > 0 && needs_samples) {
            const std::vector<double> cum = cumulative_probs(rotated);
            std::vector<std::size_t> bits(static_cast<std::size_t>(shots));
            for (auto& b : bits) b = sample_bitstring(cum, rng);
            for (std::size_t idx : plan.groups[g]) {
                const Term& term = h.terms[idx];
                if (term.string.is_identity()) {
                    out[idx] = term.coeff;
                    continue;
                }
                const std::uint64_t support = term.string.support_mask();
                double sum = 0.0;
                for (std::size_t b : bits) sum += eigenvalue_sign(b, support);
                out[idx] = term.coeff * sum / static_cast<double>(shots);
            }
        } else {
            for (std::size_t idx : plan.groups[g]) {
                const Term& term = h.terms[idx];
                out[idx] = term.string.is_identity()
                               ? term.coeff
                               : term.coeff * diagonal_expectation(rotated, term.string.support_mask());
            }
        }
    }

    for (std::size_t idx = 0; idx < seen.size(); ++idx) {
        if (!seen[idx]) throw std::invalid_argument("grouping plan does not cover every term");
    }
    return out;
}

double slice_loss(const Statevector& psi, const Hamiltonian& h,
                  std::span<const std::size_t> term_indices, const NoiseConfig& noise,
                  rng::Stream& rng, bool grouping, std::uint64_t* shot_counter) {
    double loss = 0.0;
    if (grouping && noise.shots > 0) {
        Hamiltonian sub;
        sub.n_qubits = h.n_qubits;
        sub.terms.reserve(term_indices.size());
        for (std::size_t idx : term_indices) sub.terms.push_back(h.terms[idx]);
        const GroupingPlan plan = group_qwc(sub);
        const std::vector<double> vals = expectation_grouped(psi, sub, plan, noise.shots, rng);
        for (std::size_t j = 0; j < sub.terms.size(); ++j) {
            loss += apply_depolarizing(vals[j], sub.terms[j], noise.p);
        }
        if (shot_counter) {
            for (const auto& group : plan.groups) {
                const bool sampled = std::any_of(group.begin(), group.end(), [&](std::size_t j) {
                    return !sub.terms[j].string.is_identity();
                });
                if (sampled) *shot_counter += static_cast<std::uint64_t>(noise.shots);
            }
        }
        return loss;
    }

    for (std::size_t idx : term_indices) {
        const Term& term = h.terms[idx];
        double e;
        if (term.string.is_identity()) {
            e = term.coeff;
        } else if (noise.shots > 0) {
            e = expectation_sampled(psi, term, noise.shots, rng);
            if (shot_counter) *shot_counter += static_cast<std::uint64_t>(noise.shots);
        } else {
            e = expectation_exact(psi, term);
        }
        loss += apply_depolarizing(e, term, noise.p);
    }
    return loss;
}

}  // namespace vqe
