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

#include <bit>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <doctest.h>

#include "vqe/exactsolver.hpp"

using namespace vqe;
using cplx = std::complex<double>;

namespace {

// Independent route to the smallest eigenvalue: build the dense matrix from
// 2x2 Kronecker factors (no mask tricks) and run shifted power iteration on
// sigma*I - H, whose dominant eigenvector is H's ground state.
Eigen::Matrix2cd factor(char c) {
    Eigen::Matrix2cd m;
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

Eigen::MatrixXcd dense_from_words(const Hamiltonian& h) {
    const Eigen::Index dim = Eigen::Index{1} << h.n_qubits;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (const Term& t : h.terms) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
        const std::string w = t.string.str();
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            const Eigen::Matrix2cd f = factor(*it);
            Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    next.block(i * 2, j * 2, 2, 2) = m(i, j) * f;
                }
            }
            m = std::move(next);
        }
        acc += t.coeff * m;
    }
    return acc;
}

double power_iteration_ground_energy(const Hamiltonian& h) {
    const Eigen::MatrixXcd m = dense_from_words(h);
    const double sigma = h.abs_coeff_sum() + 1.0;  // > max |eigenvalue|
    const Eigen::MatrixXcd shifted =
        sigma * Eigen::MatrixXcd::Identity(m.rows(), m.cols()) - m;

    Eigen::VectorXcd v(m.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = cplx(1.0 + 0.01 * static_cast<double>(i % 7), 0.02 * static_cast<double>(i % 3));
    }
    v.normalize();

    double lambda = 0.0;
    for (int it = 0; it < 20000; ++it) {
        v = (shifted * v).normalized();
        const double next = std::real(cplx(v.adjoint() * m * v));
        if (it > 50 && std::abs(next - lambda) < 1e-14 * sigma) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda;
}

}  // namespace

TEST_CASE("two-level analytic spectrum: a Z + b X has ground energy -sqrt(a^2+b^2)") {
    const Hamiltonian h = parse_hamiltonian("0.6 Z\n0.8 X\n");
    CHECK(ground_state_energy(h).energy == doctest::Approx(-1.0).epsilon(1e-12));
    const Hamiltonian z = parse_hamiltonian("2.5 Z\n");
    CHECK(ground_state_energy(z).energy == doctest::Approx(-2.5).epsilon(1e-12));
}

TEST_CASE("dense path matches the power-iteration oracle") {
    const Hamiltonian h = parse_hamiltonian(
        "0.31 ZZIII\n-0.74 XYIIZ\n0.45 IXZYI\n0.22 YYYXX\n-0.11 ZIXIZ\n"
        "0.57 IIZZI\n-0.29 XIIXY\n0.18 IZIIZ\n");
    const double got = ground_state_energy(h).energy;
    const double want = power_iteration_ground_energy(h);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("iterative path matches the dense path") {
    const Hamiltonian h = parse_hamiltonian(
        "0.9 ZZIIIIII\n-0.6 XXIIIIII\n0.5 IIZZIIII\n-0.4 IIIYYIII\n"
        "0.3 IIIIXXII\n0.25 IIIIIZZI\n-0.35 ZIIIIIIZ\n0.15 IYIIIYII\n"
        "0.2 IIXIIIXI\n-0.1 ZIZIZIZI\n");
    const EigenPair dense = smallest_eigenpair_dense(h);
    const EigenPair lanczos = smallest_eigenpair_lanczos(h);
    CHECK(dense.value == doctest::Approx(lanczos.value).epsilon(1e-9));
}

TEST_CASE("diagonal operator at 11 qubits: iterative result equals the basis-state scan") {
    // All-Z terms give a diagonal matrix, so the ground energy is the minimum
    // over computational basis states, computable by brute force.
    const int n = 11;
    Hamiltonian h;
    h.n_qubits = n;
    const struct {
        double c;
        std::uint64_t mask;
    } terms[] = {
        {0.83, 0b00000000011}, {-0.41, 0b00000011000}, {0.59, 0b01100000000},
        {-0.77, 0b00011000000}, {0.23, 0b10000000001}, {-0.31, 0b00000100100},
        {0.47, 0b01010000000}, {-0.13, 0b00001000010},
    };
    for (const auto& t : terms) {
        std::string w(n, 'I');
        for (int q = 0; q < n; ++q) {
            if (t.mask >> q & 1) w[static_cast<std::size_t>(q)] = 'Z';
        }
        h.terms.push_back(Term{t.c, PauliString::parse(w)});
    }

    double want = 1e300;
    for (std::uint64_t basis = 0; basis < (1ull << n); ++basis) {
        double e = 0.0;
        for (const auto& t : terms) {
            e += t.c * ((std::popcount(basis & t.mask) & 1) ? -1.0 : 1.0);
        }
        want = std::min(want, e);
    }

    // n = 11 routes through the iterative path
    const GroundTruth gt = ground_state_energy(h);
    CHECK(gt.n_qubits == n);
    CHECK(gt.energy == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("eigenpairs satisfy the eigenvalue equation") {
    const Hamiltonian h = parse_hamiltonian(
        "0.31 ZZII\n-0.74 XYIZ\n0.45 IXZY\n0.22 YYYX\n-0.11 ZIXI\n");
    for (const EigenPair& pair : {smallest_eigenpair_dense(h), smallest_eigenpair_lanczos(h)}) {
        REQUIRE(pair.vector.size() == 16);
        double norm = 0.0;
        for (const cplx& a : pair.vector) norm += std::norm(a);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));

        std::vector<cplx> hv;
        apply_hamiltonian(h, pair.vector, hv);
        double residual = 0.0;
        cplx rayleigh{0, 0};
        for (std::size_t i = 0; i < hv.size(); ++i) {
            residual += std::norm(hv[i] - pair.value * pair.vector[i]);
            rayleigh += std::conj(pair.vector[i]) * hv[i];
        }
        CHECK(std::sqrt(residual) <= 1e-7);
        CHECK(rayleigh.real() == doctest::Approx(pair.value).epsilon(1e-10));
        CHECK(std::abs(rayleigh.imag()) <= 1e-10);
    }
}

TEST_CASE("matrix-free application matches dense multiplication") {
    const Hamiltonian h = parse_hamiltonian("0.5 XYZ\n-1.25 ZZI\n0.75 YYY\n-0.3 IXI\n");
    const Eigen::MatrixXcd m = dense_from_words(h);

    std::vector<cplx> in(8);
    for (std::size_t i = 0; i < 8; ++i) {
        in[i] = cplx(std::cos(1.1 * static_cast<double>(i)),
                     std::sin(0.7 * static_cast<double>(i)));
    }
    std::vector<cplx> out;
    apply_hamiltonian(h, in, out);
    REQUIRE(out.size() == 8);

    Eigen::VectorXcd vin(8);
    for (std::size_t i = 0; i < 8; ++i) vin(static_cast<Eigen::Index>(i)) = in[i];
    const Eigen::VectorXcd want = m * vin;
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(std::abs(out[i] - want(static_cast<Eigen::Index>(i))) <= 1e-13);
    }
}

TEST_CASE("bundled molecule ground energy is frozen") {
    const Hamiltonian h = load_hamiltonian_file(std::string(VQE_DATA_DIR) + "/h2.txt");
    const GroundTruth gt = ground_state_energy(h);
    CHECK(gt.n_qubits == 4);
    CHECK(gt.energy == doctest::Approx(-1.8510491784448648).epsilon(1e-10));
    CHECK(gt.energy == doctest::Approx(power_iteration_ground_energy(h)).epsilon(1e-8));
}

TEST_CASE("qubit-count guard") {
    Hamiltonian h;
    h.n_qubits = 15;
    h.terms.push_back(Term{1.0, PauliString::parse(std::string(15, 'Z'))});
    CHECK_THROWS_AS(ground_state_energy(h), std::domain_error);
}
