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

#include "vqe/pauli.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace vqe {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

PauliString PauliString::parse(std::string_view word) {
    std::vector<Pauli> ops;
    ops.reserve(word.size());
    for (char c : word) {
        switch (c) {
            case 'I': ops.push_back(Pauli::I); break;
            case 'X': ops.push_back(Pauli::X); break;
            case 'Y': ops.push_back(Pauli::Y); break;
            case 'Z': ops.push_back(Pauli::Z); break;
            default:
                throw std::invalid_argument(std::string("invalid Pauli character '") + c +
                                            "' in word \"" + std::string(word) + "\"");
        }
    }
    return PauliString(std::move(ops));
}

bool PauliString::is_identity() const {
    for (Pauli p : ops_) {
        if (p != Pauli::I) return false;
    }
    return true;
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (Pauli p : ops_) {
        if (p != Pauli::I) ++w;
    }
    return w;
}

namespace {

std::uint64_t mask_of(const std::vector<Pauli>& ops, bool x_like, bool z_like) {
    if (ops.size() > 64) throw std::domain_error("PauliString masks limited to 64 qubits");
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < ops.size(); ++q) {
        Pauli p = ops[q];
        bool hit = (x_like && (p == Pauli::X || p == Pauli::Y)) ||
                   (z_like && (p == Pauli::Z || p == Pauli::Y));
        if (hit) m |= std::uint64_t{1} << q;
    }
    return m;
}

}  // namespace

std::uint64_t PauliString::x_mask() const { return mask_of(ops_, true, false); }
std::uint64_t PauliString::z_mask() const { return mask_of(ops_, false, true); }

std::uint64_t PauliString::y_mask() const {
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < ops_.size(); ++q) {
        if (ops_[q] == Pauli::Y) m |= std::uint64_t{1} << q;
    }
    return m;
}

std::uint64_t PauliString::support_mask() const { return x_mask() | z_mask(); }

std::string PauliString::str() const {
    std::string s;
    s.reserve(ops_.size());
    for (Pauli p : ops_) s.push_back(pauli_char(p));
    return s;
}

double Hamiltonian::abs_coeff_sum() const {
    double s = 0.0;
    for (const Term& t : terms) s += std::abs(t.coeff);
    return s;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("Hamiltonian parse error at line " + std::to_string(line_no) +
                             ": " + what);
}

}  // namespace

Hamiltonian parse_hamiltonian(std::istream& in) {
    Hamiltonian h;
    std::unordered_map<std::string, std::size_t> index_of;
    std::string line;
    std::size_t line_no = 0;
    std::size_t expected_len = 0;
    bool have_len = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);

        std::istringstream fields(line);
        std::string coeff_tok, word_tok, extra_tok;
        if (!(fields >> coeff_tok)) continue;  // blank or comment-only line

        double coeff = 0.0;
        const char* first = coeff_tok.data();
        const char* last = first + coeff_tok.size();
        auto [ptr, ec] = std::from_chars(first, last, coeff);
        if (ec != std::errc{} || ptr != last || !std::isfinite(coeff)) {
            parse_fail(line_no, "malformed coefficient \"" + coeff_tok + "\"");
        }

        if (!(fields >> word_tok)) parse_fail(line_no, "missing Pauli word");
        if (fields >> extra_tok) parse_fail(line_no, "unexpected trailing field \"" + extra_tok + "\"");

        if (!have_len) {
            expected_len = word_tok.size();
            have_len = true;
            if (expected_len == 0) parse_fail(line_no, "empty Pauli word");
        } else if (word_tok.size() != expected_len) {
            parse_fail(line_no, "Pauli word length " + std::to_string(word_tok.size()) +
                                    " does not match established length " +
                                    std::to_string(expected_len));
        }

        PauliString ps;
        try {
            ps = PauliString::parse(word_tok);
        } catch (const std::invalid_argument& e) {
            parse_fail(line_no, e.what());
        }

        if (auto it = index_of.find(word_tok); it != index_of.end()) {
            h.terms[it->second].coeff += coeff;
        } else {
            index_of.emplace(word_tok, h.terms.size());
            h.terms.push_back(Term{coeff, std::move(ps)});
        }
    }

    if (h.terms.empty()) {
        throw std::runtime_error("Hamiltonian parse error: no terms found (line " +
                                 std::to_string(line_no) + " is the last line read)");
    }
    h.n_qubits = static_cast<int>(expected_len);
    return h;
}

Hamiltonian parse_hamiltonian(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_hamiltonian(in);
}

Hamiltonian load_hamiltonian_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open Hamiltonian file: " + path);
    return parse_hamiltonian(in);
}

std::string serialize_hamiltonian(const Hamiltonian& h) {
    std::string out;
    char buf[64];
    for (const Term& t : h.terms) {
        std::snprintf(buf, sizeof buf, "%.17g", t.coeff);
        out += buf;
        out += ' ';
        out += t.string.str();
        out += '\n';
    }
    return out;
}

Eigen::MatrixXcd to_dense_matrix(const Hamiltonian& h) {
    if (h.n_qubits > 14) {
        throw std::domain_error("to_dense_matrix limited to 14 qubits, got " +
                                std::to_string(h.n_qubits));
    }
    const std::size_t dim = std::size_t{1} << h.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const Term& t : h.terms) {
        const std::uint64_t xm = t.string.x_mask();
        const std::uint64_t sign_mask = t.string.z_mask();  // Z and Y positions
        const std::complex<double> phase0 =
            t.coeff * ipow[std::popcount(t.string.y_mask()) % 4];
        for (std::size_t col = 0; col < dim; ++col) {
            const std::size_t row = col ^ xm;
            const double sign = (std::popcount(col & sign_mask) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += phase0 * sign;
        }
    }
    return m;
}

}  // namespace vqe
