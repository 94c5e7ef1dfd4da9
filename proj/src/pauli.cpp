// Copyright 2026 The gapscope Authors
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

#include "gapscope/pauli.hpp"

#include "gapscope/error.hpp"
#include "gapscope/random.hpp"

namespace gapscope {

char to_char(PauliLetter letter) {
    switch (letter) {
    case PauliLetter::I:
        return 'I';
    case PauliLetter::X:
        return 'X';
    case PauliLetter::Y:
        return 'Y';
    case PauliLetter::Z:
        return 'Z';
    }
    return '?';
}

namespace {

void check_width(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DomainError("Pauli string width must be in [1, 64], got " +
                          std::to_string(n_qubits));
    }
}

std::uint64_t width_mask(int n) {
    return n == 64 ? ~0ULL : ((1ULL << n) - 1);
}

} // namespace

PauliString::PauliString(int n_qubits) : n_qubits_(n_qubits) {
    check_width(n_qubits);
}

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
    check_width(n_qubits);
    if (((x_ | z_) & ~width_mask(n_qubits)) != 0) {
        throw DomainError("Pauli masks exceed register width");
    }
}

PauliString PauliString::parse(std::string_view letters) {
    const int n = static_cast<int>(letters.size());
    check_width(n);
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = 1ULL << q;
        switch (letters[q]) {
        case 'I':
            break;
        case 'X':
            x |= bit;
            break;
        case 'Y':
            x |= bit;
            z |= bit;
            break;
        case 'Z':
            z |= bit;
            break;
        default:
            throw DomainError("invalid Pauli letter '" + std::string(1, letters[q]) +
                              "' in \"" + std::string(letters) + "\"");
        }
    }
    return PauliString(n, x, z);
}

PauliString PauliString::on_sites(int n_qubits, const std::vector<int> &sites,
                                  PauliLetter letter) {
    PauliString p(n_qubits);
    for (int q : sites) {
        p = p.with_letter(q, letter);
    }
    return p;
}

PauliLetter PauliString::letter(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw DomainError("qubit index out of range");
    }
    const unsigned bits =
        static_cast<unsigned>((x_ >> qubit) & 1U) | (static_cast<unsigned>((z_ >> qubit) & 1U) << 1);
    return static_cast<PauliLetter>(bits);
}

PauliString PauliString::with_letter(int qubit, PauliLetter letter) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw DomainError("qubit index out of range");
    }
    const std::uint64_t bit = 1ULL << qubit;
    const auto code = static_cast<unsigned>(letter);
    std::uint64_t x = (x_ & ~bit) | ((code & 1U) ? bit : 0);
    std::uint64_t z = (z_ & ~bit) | ((code & 2U) ? bit : 0);
    return PauliString(n_qubits_, x, z);
}

std::vector<int> PauliString::support_qubits() const {
    std::vector<int> out;
    for (std::uint64_t s = support(); s != 0; s &= s - 1) {
        out.push_back(std::countr_zero(s));
    }
    return out;
}

std::string PauliString::to_string() const {
    std::string out(static_cast<std::size_t>(n_qubits_), 'I');
    for (int q = 0; q < n_qubits_; ++q) {
        out[static_cast<std::size_t>(q)] = to_char(letter(q));
    }
    return out;
}

std::size_t PauliStringHash::operator()(const PauliString &p) const noexcept {
    return static_cast<std::size_t>(
        mix64(p.x_mask() ^ mix64(p.z_mask() ^ static_cast<std::uint64_t>(p.n_qubits()))));
}

} // namespace gapscope
