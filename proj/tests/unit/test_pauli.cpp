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
#include "gapscope/pauli.hpp"

using namespace gapscope;

TEST_CASE("parse and print round trip") {
    for (const char *text : {"I", "X", "Y", "Z", "XIZY", "IIIIIIIIIIZ"}) {
        CHECK(PauliString::parse(text).to_string() == text);
    }
    const auto p = PauliString::parse("XIZY");
    CHECK(p.n_qubits() == 4);
    CHECK(p.weight() == 3);
    CHECK(p.y_count() == 1);
    CHECK(p.letter(0) == PauliLetter::X);
    CHECK(p.letter(1) == PauliLetter::I);
    CHECK(p.letter(2) == PauliLetter::Z);
    CHECK(p.letter(3) == PauliLetter::Y);
    CHECK(p.x_mask() == 0b1001);
    CHECK(p.z_mask() == 0b1100);
    CHECK(p.support_qubits() == std::vector<int>{0, 2, 3});
}

TEST_CASE("bad letters and widths are rejected") {
    CHECK_THROWS_AS(PauliString::parse("XQ"), DomainError);
    CHECK_THROWS_AS(PauliString::parse(""), DomainError);
    CHECK_THROWS_AS(PauliString(3, 0b1000, 0), DomainError);
    CHECK_THROWS_AS(PauliString::parse("XX").letter(2), DomainError);
}

TEST_CASE("commutation follows the symplectic form") {
    const auto xx = PauliString::parse("XX");
    const auto zz = PauliString::parse("ZZ");
    const auto zi = PauliString::parse("ZI");
    const auto yy = PauliString::parse("YY");
    CHECK(xx.commutes_with(zz));
    CHECK_FALSE(xx.commutes_with(zi));
    CHECK(xx.commutes_with(yy));
    CHECK_FALSE(PauliString::parse("X").commutes_with(PauliString::parse("Y")));
    CHECK(PauliString::parse("XYZ").commutes_with(PauliString::parse("XYZ")));
}

TEST_CASE("on_sites and with_letter") {
    const auto p = PauliString::on_sites(5, {1, 3}, PauliLetter::Y);
    CHECK(p.to_string() == "IYIYI");
    CHECK(p.with_letter(3, PauliLetter::I).to_string() == "IYIII");
    CHECK(PauliString(4).is_identity());
}
