// Copyright 2026 The quasineg Authors
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

#include <numbers>

#include "catch_amalgamated.hpp"
#include "quasineg/circuit.hpp"
#include "quasineg/error.hpp"
#include "test_util.hpp"

using namespace quasineg;
using Catch::Approx;

namespace {

std::vector<int> multiplicities(const CircuitLedger& l) {
  std::vector<int> out;
  for (const auto& e : l.entries()) out.push_back(e.multiplicity);
  return out;
}

NoiseSpec noise(NoiseKind k, double p) {
  NoiseSpec s;
  s.kind = k;
  s.p = p;
  return s;
}

}  // namespace

TEST_CASE("block ledgers", "[circuit]") {
  const CircuitLedger c2qt = block("c2q_t");
  REQUIRE(c2qt.size() == 6);
  const char* labels[6] = {"rho0", "H", "S", "T", "CX", "Fz"};
  for (size_t i = 0; i < 6; ++i) {
    CHECK(c2qt.entries()[i].element.label == labels[i]);
    CHECK(c2qt.entries()[i].multiplicity == 1);
  }
  CHECK(block("c1q").size() == 4);
  CHECK(block("c1q_t").size() == 5);
  CHECK(block("c2q").size() == 5);
  CHECK(block("c2q+t").hash() == c2qt.hash());
  CHECK_THROWS_AS(block("c3q"), ValidationError);

  const CircuitLedger noisy = block("c2q_t", noise(NoiseKind::kDepolarizing, 0.1));
  CHECK(noisy.entries().front().element.key == c2qt.entries().front().element.key);
  CHECK(noisy.entries().back().element.key == c2qt.entries().back().element.key);
  for (size_t i = 1; i < 5; ++i) CHECK(noisy.entries()[i].element.key != c2qt.entries()[i].element.key);
  CHECK(noisy.hash() != c2qt.hash());
}

TEST_CASE("variational gate set", "[circuit]") {
  const CircuitLedger v = variational_gateset(10);
  REQUIRE(v.size() == 21);
  for (size_t i = 0; i < 20; ++i) {
    CHECK(v.entries()[i].element.arity == 1);
    CHECK(v.entries()[i].multiplicity == 1);
  }
  CHECK(v.entries()[20].element.arity == 2);
  CHECK(v.entries()[20].multiplicity == 10);
  for (const auto& e : v.entries()) CHECK(e.element.kind == ElementKind::kChannel);

  const auto angles = variational_angles(10);
  for (int k = 0; k < 10; ++k) CHECK(angles[k] == Approx(-std::numbers::pi + 2 * std::numbers::pi * k / 10).margin(1e-15));

  const CircuitLedger one = variational_gateset(1);
  REQUIRE(one.size() == 3);
  CHECK(variational_angles(1) == std::vector<double>{-std::numbers::pi});
  CHECK(one.entries()[2].multiplicity == 1);

  const CircuitLedger deph = variational_gateset(10, noise(NoiseKind::kDephasing, 0.2));
  CHECK(deph.size() == 21);
  CHECK(deph.entries()[20].multiplicity == 10);
  CHECK(deph.hash() != v.hash());
  CHECK_THROWS_AS(variational_gateset(0), ValidationError);
}

TEST_CASE("ledger negativity values", "[circuit]") {
  const LedgerNegativity w = ledger_negativity(catalog_frame("wootters").synthesis, block("c2q_t"));
  CHECK(w.total_bits == Approx(4.09).margin(0.02));

  // Under the stabilizer frame T costs log2 sqrt2 and CX costs log2 3; every other element is free.
  const LedgerNegativity s = ledger_negativity(catalog_frame("stabilizer1q").synthesis, block("c2q_t"));
  CHECK(s.total_bits == Approx(0.5 + std::log2(3.0)).margin(1e-9));
  CHECK(s.per_element[3].negativity_bits == Approx(0.5).margin(1e-9));
  CHECK(s.per_element[4].negativity_bits == Approx(std::log2(3.0)).margin(1e-9));

  CHECK(ledger_negativity(catalog_frame("stabilizer1q").synthesis, block("c1q")).total_bits == Approx(0).margin(1e-9));
  CHECK(ledger_negativity(catalog_frame("lambda_cube").synthesis, block("c2q_t")).total_bits == Approx(1.5).margin(1e-9));
  CHECK_THROWS_AS(ledger_negativity(catalog_frame("wigner", 3).synthesis, block("c1q")), ValidationError);
}

TEST_CASE("ledger total is the multiplicity-weighted sum", "[circuit]") {
  for (const char* f : {"wootters", "sic", "stabilizer1q", "lambda_cube"}) {
    const LedgerNegativity n =
        ledger_negativity(catalog_frame(f).synthesis, variational_gateset(4, noise(NoiseKind::kDephasing, 0.1)));
    double sum = 0;
    for (const auto& e : n.per_element) sum += e.multiplicity * e.negativity_bits;
    CHECK(n.total_bits == sum);
  }
}

TEST_CASE("stabilizer negativity decreases with depolarizing noise", "[circuit]") {
  const SynthesisMap stab = catalog_frame("stabilizer1q").synthesis;
  double prev = ledger_negativity(stab, block("c2q_t")).total_bits;
  for (double p : {0.1, 0.2, 0.4}) {
    const double v = ledger_negativity(stab, block("c2q_t", noise(NoiseKind::kDepolarizing, p))).total_bits;
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("a trivial POVM entry never changes the total", "[circuit]") {
  for (const char* f : {"wootters", "sic", "stabilizer1q", "lambda_cube"}) {
    const SynthesisMap e = catalog_frame(f).synthesis;
    CircuitLedger l = block("c2q_t");
    const double before = ledger_negativity(e, l).total_bits;
    l.add(povm_element("I"));
    CHECK(ledger_negativity(e, l).total_bits == before);
  }
}

TEST_CASE("circuit_to_ledger counts identical elements", "[circuit]") {
  // Two |0> inputs and one |+>, four H, two CX, two Z readouts, one unmeasured wire.
  CircuitDescription c;
  c.n = 3;
  c.initial = {"0", "0", "+"};
  c.gates = {{GateId::kH, std::nullopt, {0}}, {GateId::kH, std::nullopt, {1}}, {GateId::kCX, std::nullopt, {0, 1}},
             {GateId::kH, std::nullopt, {2}}, {GateId::kCX, std::nullopt, {1, 2}}, {GateId::kH, std::nullopt, {0}}};
  c.measure = {std::string("Z"), std::string("Z"), std::nullopt};
  CHECK(multiplicities(circuit_to_ledger(c)) == std::vector<int>{2, 1, 4, 2, 2, 1});

  CircuitDescription h;
  h.n = 1;
  h.initial = {"0"};
  h.gates = {{GateId::kH, std::nullopt, {0}}};
  h.measure = {std::string("Z")};
  CHECK(multiplicities(circuit_to_ledger(h)) == std::vector<int>{1, 1, 1});

  CircuitDescription rx;
  rx.n = 1;
  rx.initial = {"0"};
  rx.gates = {{GateId::kRx, std::numbers::pi / 2, {0}}, {GateId::kRx, std::numbers::pi / 2, {0}}};
  rx.measure = {std::string("Z")};
  const CircuitLedger lr = circuit_to_ledger(rx);
  REQUIRE(lr.size() == 3);
  CHECK(lr.entries()[1].multiplicity == 2);
  // Angles equal after rounding at 1e-12 merge.
  rx.gates[1].theta = std::numbers::pi / 2 + 1e-14;
  CHECK(circuit_to_ledger(rx).entries()[1].multiplicity == 2);
}

TEST_CASE("malformed circuits are rejected", "[circuit]") {
  CircuitDescription c;
  c.n = 2;
  c.initial = {"0", "0"};
  c.measure = {std::nullopt, std::nullopt};
  c.gates = {{GateId::kCX, std::nullopt, {0, 0}}};
  CHECK_THROWS_AS(validate_circuit(c), ValidationError);
  c.gates = {{GateId::kH, std::nullopt, {2}}};
  CHECK_THROWS_AS(validate_circuit(c), ValidationError);
  c.gates = {{GateId::kRx, std::nullopt, {0}}};
  CHECK_THROWS_AS(validate_circuit(c), ValidationError);
  c.gates = {{GateId::kH, 0.5, {0}}};
  CHECK_THROWS_AS(validate_circuit(c), ValidationError);
  c.gates = {{GateId::kCX, std::nullopt, {0}}};
  CHECK_THROWS_AS(validate_circuit(c), ValidationError);
  c.gates.clear();
  c.initial = {"0"};
  CHECK_THROWS_AS(validate_circuit(c), ValidationError);
  c.initial = {"0", "x"};
  CHECK_THROWS_AS(validate_circuit(c), ValidationError);
}

TEST_CASE("element keys and labels", "[circuit]") {
  const CircuitElement a = gate_element(GateId::kRx, 0.5, noise(NoiseKind::kDephasing, 0.1));
  const CircuitElement b = gate_element(GateId::kRx, 0.5, noise(NoiseKind::kDephasing, 0.1));
  const CircuitElement c = gate_element(GateId::kRx, 0.5, noise(NoiseKind::kDephasing, 0.2));
  CHECK(a.key == b.key);
  CHECK(a.key != c.key);
  CHECK(gate_element(GateId::kCX).arity == 2);
  CHECK(povm_element("I").label == "trivial");
  CHECK(state_element("+").label == "rho+");
  CHECK_THROWS_AS(povm_element("X"), ValidationError);

  CircuitLedger l;
  l.add(a);
  l.add(b, 3);
  REQUIRE(l.size() == 1);
  CHECK(l.entries()[0].multiplicity == 4);
  CHECK_THROWS_AS(l.add(c, 0), ValidationError);
}
