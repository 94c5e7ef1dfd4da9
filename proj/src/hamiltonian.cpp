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

#include "gapscope/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

#include "gapscope/error.hpp"

namespace gapscope {

Hamiltonian::Hamiltonian(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DomainError("Hamiltonian width must be in [1, 64]");
    }
}

Hamiltonian::Hamiltonian(int n_qubits, const std::vector<PauliTerm> &terms)
    : Hamiltonian(n_qubits) {
    std::unordered_map<PauliString, std::size_t, PauliStringHash> position;
    for (const auto &term : terms) {
        if (term.pauli.n_qubits() != n_qubits) {
            throw DomainError("term " + term.pauli.to_string() +
                              " does not match Hamiltonian width " +
                              std::to_string(n_qubits));
        }
        auto [it, inserted] = position.try_emplace(term.pauli, terms_.size());
        if (inserted) {
            terms_.push_back(term);
        } else {
            terms_[it->second].coeff += term.coeff;
        }
    }
}

bool Hamiltonian::has_identity_term() const noexcept {
    for (const auto &t : terms_) {
        if (t.pauli.is_identity()) {
            return true;
        }
    }
    return false;
}

bool Hamiltonian::is_real() const noexcept {
    for (const auto &t : terms_) {
        if (t.pauli.y_count() % 2 != 0) {
            return false;
        }
    }
    return true;
}

Hamiltonian Hamiltonian::scaled(double factor) const {
    Hamiltonian out(n_qubits_);
    out.terms_ = terms_;
    for (auto &t : out.terms_) {
        t.coeff *= factor;
    }
    return out;
}

ModelKind parse_model_kind(const std::string &name) {
    if (name == "heisenberg") {
        return ModelKind::heisenberg;
    }
    if (name == "tfim") {
        return ModelKind::tfim;
    }
    throw InvalidModelError("unknown model kind \"" + name + "\"");
}

std::string to_string(ModelKind kind) {
    return kind == ModelKind::heisenberg ? "heisenberg" : "tfim";
}

Hamiltonian build_model(ModelKind kind, int n_qubits, const ModelParams &params) {
    if (n_qubits < 2) {
        throw InvalidModelError("chain models need at least 2 qubits, got " +
                                std::to_string(n_qubits));
    }
    if (n_qubits > kMaxQubits) {
        throw InvalidModelError("chain models support at most 64 qubits");
    }
    std::vector<PauliTerm> terms;
    if (kind == ModelKind::heisenberg) {
        for (int i = 0; i + 1 < n_qubits; ++i) {
            terms.push_back({params.jx, PauliString::on_sites(n_qubits, {i, i + 1}, PauliLetter::X)});
            terms.push_back({params.jy, PauliString::on_sites(n_qubits, {i, i + 1}, PauliLetter::Y)});
            terms.push_back({params.jz, PauliString::on_sites(n_qubits, {i, i + 1}, PauliLetter::Z)});
        }
    } else {
        for (int i = 0; i + 1 < n_qubits; ++i) {
            terms.push_back({-params.j, PauliString::on_sites(n_qubits, {i, i + 1}, PauliLetter::Z)});
        }
        for (int i = 0; i < n_qubits; ++i) {
            terms.push_back({-params.d, PauliString::on_sites(n_qubits, {i}, PauliLetter::X)});
        }
    }
    return Hamiltonian(n_qubits, terms);
}

double l1_norm(const Hamiltonian &h) {
    double sum = 0.0;
    for (const auto &t : h.terms()) {
        sum += std::abs(t.coeff);
    }
    return sum;
}

double commutator_norm(const Hamiltonian &h) {
    const auto &terms = h.terms();
    double sum = 0.0;
    for (std::size_t a = 0; a < terms.size(); ++a) {
        for (std::size_t b = a + 1; b < terms.size(); ++b) {
            if (!terms[a].pauli.commutes_with(terms[b].pauli)) {
                sum += 2.0 * std::abs(terms[a].coeff * terms[b].coeff);
            }
        }
    }
    return sum;
}

double tfim_gap(int n_qubits, double j, double d) {
    if (n_qubits < 2) {
        throw InvalidModelError("tfim_gap needs at least 2 qubits");
    }
    const double k = std::numbers::pi / (n_qubits + 1);
    const double radicand = j * j + d * d - 2.0 * j * d * std::cos(k);
    return 2.0 * std::sqrt(std::max(radicand, 0.0));
}

LocalityMode parse_locality_mode(const std::string &name) {
    if (name == "all-subsets") {
        return LocalityMode::all_subsets;
    }
    if (name == "contiguous-windows") {
        return LocalityMode::contiguous_windows;
    }
    throw DomainError("unknown locality mode \"" + name + "\"");
}

std::string to_string(LocalityMode mode) {
    return mode == LocalityMode::all_subsets ? "all-subsets" : "contiguous-windows";
}

namespace {

// Appends every non-identity letter assignment on `sites`.
void append_letterings(int n_qubits, const std::vector<int> &sites,
                       std::vector<PauliString> &out) {
    static constexpr PauliLetter kLetters[3] = {PauliLetter::X, PauliLetter::Y,
                                                PauliLetter::Z};
    std::size_t combos = 1;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        combos *= 3;
    }
    for (std::size_t code = 0; code < combos; ++code) {
        PauliString p(n_qubits);
        std::size_t rest = code;
        for (std::size_t i = sites.size(); i-- > 0;) {
            p = p.with_letter(sites[i], kLetters[rest % 3]);
            rest /= 3;
        }
        out.push_back(p);
    }
}

} // namespace

ObservableSet enumerate_observables(int n_qubits, int q, LocalityMode mode) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DomainError("observable width must be in [1, 64]");
    }
    if (q < 1 || q > n_qubits) {
        throw DomainError("locality q=" + std::to_string(q) + " outside [1, " +
                          std::to_string(n_qubits) + "]");
    }
    ObservableSet set;
    set.locality = q;
    set.mode = mode;
    for (int w = 1; w <= q; ++w) {
        // Lexicographic w-combinations of {0..n-1}.
        std::vector<int> sites(static_cast<std::size_t>(w));
        for (int i = 0; i < w; ++i) {
            sites[static_cast<std::size_t>(i)] = i;
        }
        while (true) {
            const bool fits = mode == LocalityMode::all_subsets ||
                              sites.back() - sites.front() + 1 <= q;
            if (fits) {
                append_letterings(n_qubits, sites, set.observables);
            }
            int i = w - 1;
            while (i >= 0 && sites[static_cast<std::size_t>(i)] == n_qubits - w + i) {
                --i;
            }
            if (i < 0) {
                break;
            }
            ++sites[static_cast<std::size_t>(i)];
            for (int k = i + 1; k < w; ++k) {
                sites[static_cast<std::size_t>(k)] = sites[static_cast<std::size_t>(k - 1)] + 1;
            }
        }
    }
    return set;
}

nlohmann::json to_json(const Hamiltonian &h) {
    auto arr = nlohmann::json::array();
    for (const auto &t : h.terms()) {
        arr.push_back({{"coeff", t.coeff}, {"pauli", t.pauli.to_string()}});
    }
    return arr;
}

Hamiltonian hamiltonian_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty()) {
        throw DomainError("Hamiltonian JSON must be a non-empty array of terms");
    }
    std::vector<PauliTerm> terms;
    int width = -1;
    for (const auto &item : j) {
        auto pauli = PauliString::parse(item.at("pauli").get<std::string>());
        if (width < 0) {
            width = pauli.n_qubits();
        }
        terms.push_back({item.at("coeff").get<double>(), pauli});
    }
    return Hamiltonian(width, terms);
}

} // namespace gapscope
