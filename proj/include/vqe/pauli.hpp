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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace vqe {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

// Tensor product of single-qubit Pauli operators. Character k of the word is
// the operator acting on qubit k, and qubit k is bit k of a basis index
// (little-endian throughout the codebase).
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {}

    // Throws std::invalid_argument on characters outside {I, X, Y, Z}.
    static PauliString parse(std::string_view word);

    std::size_t size() const { return ops_.size(); }
    Pauli op(std::size_t q) const { return ops_[q]; }
    bool is_identity() const;
    std::size_t weight() const;  // number of non-identity positions

    // Bit masks over qubit positions; valid for size() <= 64.
    std::uint64_t x_mask() const;  // op is X or Y
    std::uint64_t z_mask() const;  // op is Z or Y
    std::uint64_t y_mask() const;
    std::uint64_t support_mask() const;  // op is not I

    std::string str() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

  private:
    std::vector<Pauli> ops_;
};

struct Term {
    double coeff = 0.0;
    PauliString string;
};

struct Hamiltonian {
    int n_qubits = 0;
    std::vector<Term> terms;

    std::size_t num_terms() const { return terms.size(); }
    double abs_coeff_sum() const;
};

// Text format: one term per line, `<coeff> <pauli_word>`, `#` starts a
// comment, blank lines are skipped. Duplicate words are merged by summing
// coefficients into the first occurrence; term order is first-occurrence
// order. The qubit count is the common word length. Errors (malformed
// coefficient, inconsistent word length, bad character, no terms at all) are
// reported with the 1-based line number.
Hamiltonian parse_hamiltonian(std::istream& in);
Hamiltonian parse_hamiltonian(std::string_view text);
Hamiltonian load_hamiltonian_file(const std::string& path);

// Inverse of parse_hamiltonian up to float formatting; coefficients are
// printed with enough digits to round-trip exactly.
std::string serialize_hamiltonian(const Hamiltonian& h);

// Dense 2^n x 2^n Hermitian matrix of the full operator. Guarded to
// n_qubits <= 14; throws std::domain_error above that.
Eigen::MatrixXcd to_dense_matrix(const Hamiltonian& h);

}  // namespace vqe
