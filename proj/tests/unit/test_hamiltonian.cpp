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

#include <doctest.h>

#include "gapscope/error.hpp"
#include "gapscope/hamiltonian.hpp"

using namespace gapscope;

TEST_CASE("heisenberg chain lists XX, YY, ZZ per bond") {
    const auto h = build_model(ModelKind::heisenberg, 4, {});
    REQUIRE(h.size() == 9);
    CHECK(h.terms()[0].pauli.to_string() == "XXII");
    CHECK(h.terms()[1].pauli.to_string() == "YYII");
    CHECK(h.terms()[2].pauli.to_string() == "ZZII");
    CHECK(h.terms()[3].pauli.to_string() == "IXXI");
    CHECK(h.terms()[8].pauli.to_string() == "IIZZ");
    CHECK(l1_norm(h) == doctest::Approx(9.0));
    CHECK(h.is_real());
}

TEST_CASE("tfim chain uses -J ZZ and -d X") {
    ModelParams p;
    p.j = 0.1;
    p.d = 2.0;
    const auto h = build_model(ModelKind::tfim, 3, p);
    REQUIRE(h.size() == 5);
    CHECK(h.terms()[0].pauli.to_string() == "ZZI");
    CHECK(h.terms()[0].coeff == doctest::Approx(-0.1));
    CHECK(h.terms()[4].pauli.to_string() == "IIX");
    CHECK(h.terms()[4].coeff == doctest::Approx(-2.0));
    CHECK(l1_norm(h) == doctest::Approx(6.2));
}

TEST_CASE("invalid models") {
    CHECK_THROWS_AS(build_model(ModelKind::heisenberg, 1, {}), InvalidModelError);
    CHECK_THROWS_AS(parse_model_kind("hubbard"), InvalidModelError);
    CHECK(parse_model_kind("tfim") == ModelKind::tfim);
}

TEST_CASE("duplicate terms merge in first position") {
    const Hamiltonian h(2, {{1.0, PauliString::parse("XX")},
                            {0.5, PauliString::parse("ZI")},
                            {2.0, PauliString::parse("XX")}});
    REQUIRE(h.size() == 2);
    CHECK(h.terms()[0].coeff == doctest::Approx(3.0));
    CHECK(h.terms()[1].pauli.to_string() == "ZI");
    CHECK_THROWS_AS(Hamiltonian(2, {{1.0, PauliString::parse("XXX")}}), DomainError);
}

TEST_CASE("commutator norm") {
    // Three-site Heisenberg: each of the 6 cross-bond anticommuting pairs
    // contributes 2 |h_a h_b|.
    CHECK(commutator_norm(build_model(ModelKind::heisenberg, 3, {})) == doctest::Approx(12.0));
    const Hamiltonian commuting(2, {{1.0, PauliString::parse("ZZ")}, {3.0, PauliString::parse("ZI")}});
    CHECK(commutator_norm(commuting) == 0.0);
    const Hamiltonian pair(1, {{0.5, PauliString::parse("X")}, {2.0, PauliString::parse("Z")}});
    CHECK(commutator_norm(pair) == doctest::Approx(2.0));
}

TEST_CASE("tfim closed-form gap") {
    CHECK(tfim_gap(20, 0.1, 2.0) == doctest::Approx(3.8023506779411855).epsilon(1e-12));
    CHECK(tfim_gap(4, 0.1, 2.0) == doctest::Approx(3.839996459503587).epsilon(1e-12));
}

TEST_CASE("observable enumeration") {
    const auto all = enumerate_observables(6, 3);
    CHECK(all.size() == 6 * 3 + 15 * 9 + 20 * 27);
    const auto windows = enumerate_observables(6, 3, LocalityMode::contiguous_windows);
    CHECK(windows.size() == 6 * 3 + 9 * 9 + 4 * 27);
    for (const auto &o : windows.observables) {
        const auto q = o.support_qubits();
        CHECK(q.back() - q.front() < 3);
    }
    CHECK(enumerate_observables(2, 1).observables.front().to_string() == "XI");
    CHECK(enumerate_observables(3, 3).size() == 63);
    CHECK_THROWS_AS(enumerate_observables(3, 4), DomainError);
    CHECK_THROWS_AS(enumerate_observables(3, 0), DomainError);
    CHECK(parse_locality_mode("contiguous-windows") == LocalityMode::contiguous_windows);
}

TEST_CASE("hamiltonian json round trip") {
    const auto h = build_model(ModelKind::tfim, 3, {});
    const auto j = to_json(h);
    CHECK(j[0]["pauli"] == "ZZI");
    const auto back = hamiltonian_from_json(j);
    REQUIRE(back.size() == h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        CHECK(back.terms()[i].pauli == h.terms()[i].pauli);
        CHECK(back.terms()[i].coeff == h.terms()[i].coeff);
    }
    CHECK_THROWS(hamiltonian_from_json(nlohmann::json::array()));
}
