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

#include "vqe/exactsolver.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "vqe/rng.hpp"

namespace vqe {

namespace {
constexpr int kDenseLimit = 10;
constexpr int kQubitLimit = 14;

using cd = std::complex<double>;
}  // namespace

void apply_hamiltonian(const Hamiltonian& h, const std::vector<cd>& in, std::vector<cd>& out) {
    const std::size_t dim = std::size_t{1} << h.n_qubits;
    if (in.size() != dim) throw std::invalid_argument("vector dimension mismatch");
    out.assign(dim, cd{0.0, 0.0});
    const cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const Term& t : h.terms) {
        const std::uint64_t xm = t.string.x_mask();
        const std::uint64_t sm = t.string.z_mask();
        const cd phase0 = t.coeff * ipow[std::popcount(t.string.y_mask()) % 4];
        for (std::size_t i = 0; i < dim; ++i) {
            const double sign = (std::popcount(i & sm) & 1) ? -1.0 : 1.0;
            out[i ^ xm] += phase0 * (sign * in[i]);
        }
    }
}

EigenPair smallest_eigenpair_dense(const Hamiltonian& h) {
    const Eigen::MatrixXcd m = to_dense_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("dense eigendecomposition failed");
    }
    EigenPair pair;
    pair.value = solver.eigenvalues()(0);
    const auto col = solver.eigenvectors().col(0);
    pair.vector.assign(col.data(), col.data() + col.size());
    return pair;
}

namespace {

double vec_norm(const std::vector<cd>& v) {
    double s = 0.0;
    for (const cd& x : v) s += std::norm(x);
    return std::sqrt(s);
}

cd vec_dot(const std::vector<cd>& a, const std::vector<cd>& b) {
    cd s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

}  // namespace

EigenPair smallest_eigenpair_lanczos(const Hamiltonian& h, int max_iterations, double rel_tol) {
    const std::size_t dim = std::size_t{1} << h.n_qubits;
    const double scale = std::max(h.abs_coeff_sum(), 1e-30);  // bound on the spectral radius
    const int kry_cap = static_cast<int>(std::min<std::size_t>(dim, max_iterations));

    // Deterministic pseudo-random start vector avoids symmetry traps.
    std::vector<cd> v(dim);
    rng::Stream stream(rng::derive_key({0x9d5c0e5a, static_cast<std::uint64_t>(h.n_qubits)}));
    for (cd& x : v) x = cd{stream.next_double() - 0.5, stream.next_double() - 0.5};
    {
        const double nrm = vec_norm(v);
        for (cd& x : v) x /= nrm;
    }

    std::vector<std::vector<cd>> basis{v};
    std::vector<double> alpha, beta;  // tridiagonal entries, beta[j] couples j and j+1
    std::vector<cd> w(dim);

    auto ritz_from_tridiag = [&](Eigen::VectorXd* weights) -> double {
        const int k = static_cast<int>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < k) {
                t(i, i + 1) = beta[static_cast<std::size_t>(i)];
                t(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        if (weights) *weights = es.eigenvectors().col(0);
        return es.eigenvalues()(0);
    };

    bool exhausted = false;
    for (int j = 0; j < kry_cap; ++j) {
        apply_hamiltonian(h, basis[static_cast<std::size_t>(j)], w);
        if (j > 0) {
            const double b = beta[static_cast<std::size_t>(j - 1)];
            const auto& prev = basis[static_cast<std::size_t>(j - 1)];
            for (std::size_t i = 0; i < dim; ++i) w[i] -= b * prev[i];
        }
        const double a = vec_dot(basis[static_cast<std::size_t>(j)], w).real();
        alpha.push_back(a);
        {
            const auto& cur = basis[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < dim; ++i) w[i] -= a * cur[i];
        }
        // Full reorthogonalization, twice, to keep the basis numerically clean.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                const cd c = vec_dot(q, w);
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * q[i];
            }
        }
        const double b_next = vec_norm(w);
        if (b_next <= 1e-14 * scale) {
            exhausted = true;  // Krylov space closed; tridiagonal is exact
            break;
        }
        beta.push_back(b_next);
        std::vector<cd> next(dim);
        for (std::size_t i = 0; i < dim; ++i) next[i] = w[i] / b_next;
        basis.push_back(std::move(next));

        if (j >= 2 && (j % 5 == 0 || j == kry_cap - 1)) {
            Eigen::VectorXd s;
            const double theta = ritz_from_tridiag(&s);
            const double resid = std::abs(b_next * s(s.size() - 1));
            if (resid <= rel_tol * scale) break;
            (void)theta;
        }
    }

    Eigen::VectorXd s;
    const double theta = ritz_from_tridiag(&s);

    EigenPair pair;
    pair.value = theta;
    pair.vector.assign(dim, cd{0.0, 0.0});
    for (int j = 0; j < s.size(); ++j) {
        const auto& q = basis[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < dim; ++i) pair.vector[i] += s(j) * q[i];
    }
    {
        const double nrm = vec_norm(pair.vector);
        for (cd& x : pair.vector) x /= nrm;
    }

    // Converged if the true residual is small; an exhausted Krylov space is
    // exact by construction.
    apply_hamiltonian(h, pair.vector, w);
    double resid_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) resid_sq += std::norm(w[i] - theta * pair.vector[i]);
    if (!exhausted && std::sqrt(resid_sq) > 100.0 * rel_tol * scale) {
        throw std::runtime_error("Lanczos did not converge: residual " +
                                 std::to_string(std::sqrt(resid_sq)) + " exceeds tolerance");
    }
    return pair;
}

GroundTruth ground_state_energy(const Hamiltonian& h) {
    if (h.n_qubits > kQubitLimit) {
        throw std::domain_error("ground_state_energy limited to 14 qubits, got " +
                                std::to_string(h.n_qubits));
    }
    GroundTruth g;
    g.n_qubits = h.n_qubits;
    g.energy = (h.n_qubits <= kDenseLimit) ? smallest_eigenpair_dense(h).value
                                           : smallest_eigenpair_lanczos(h).value;
    return g;
}

}  // namespace vqe
