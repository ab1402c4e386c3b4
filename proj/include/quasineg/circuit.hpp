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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quasineg/frames.hpp"
#include "quasineg/negativity.hpp"
#include "quasineg/operators.hpp"

namespace quasineg {

enum class ElementKind { kState, kChannel, kPovm };

const char* element_kind_name(ElementKind k);

struct CircuitElement {
  ElementKind kind = ElementKind::kState;
  int arity = 1;
  // Canonical serialization; two elements are the same iff keys match.
  std::string key;
  std::string label;
  HermitianOperator state;
  KrausChannel channel;
  Povm povm;
  // Set for gate channels; lets callers rebuild the element.
  std::optional<GateId> gate;
  std::optional<double> theta;
  std::optional<NoiseSpec> noise;
};

// Named single-qubit preparations: "0", "1", "+", "-", "+i", "-i".
HermitianOperator named_state(std::string_view name);

CircuitElement state_element(std::string_view name);
CircuitElement state_element(std::string label, HermitianOperator rho, int arity = 1);
CircuitElement gate_element(GateId id, std::optional<double> theta = std::nullopt,
                            const std::optional<NoiseSpec>& noise = std::nullopt);
CircuitElement channel_element(std::string label, KrausChannel phi, int arity);
// "Z" for the computational basis, "I" for the trivial POVM {I}.
CircuitElement povm_element(std::string_view name);
CircuitElement povm_element(std::string label, Povm f, int arity = 1);

std::string canonical_angle(double theta);

struct LedgerEntry {
  CircuitElement element;
  int multiplicity = 1;
};

class CircuitLedger {
 public:
  explicit CircuitLedger(int d = 2) : d_(d) {}

  // Merges into an existing entry with the same key.
  void add(const CircuitElement& element, int multiplicity = 1);

  int d() const { return d_; }
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  // Stable 64-bit FNV-1a hash of keys and multiplicities, hex encoded.
  std::string hash() const;

 private:
  int d_;
  std::vector<LedgerEntry> entries_;
};

// c1q, c1q_t, c2q, c2q_t ("c1q+t" and "c2q+t" are accepted aliases).
CircuitLedger block(std::string_view name, const std::optional<NoiseSpec>& noise = std::nullopt);
std::vector<std::string> block_names();
std::string canonical_block_name(std::string_view name);

std::vector<double> variational_angles(int b);
CircuitLedger variational_gateset(int b, const std::optional<NoiseSpec>& noise = std::nullopt);

struct LedgerOptions {
  MeasurementNorm measurement_norm = MeasurementNorm::kMaxEntry;
  LpOptions lp;
};

struct ElementNegativity {
  std::string label;
  ElementKind kind = ElementKind::kState;
  int arity = 1;
  int multiplicity = 1;
  double negativity_bits = 0.0;
};

struct LedgerNegativity {
  double total_bits = 0.0;
  std::vector<ElementNegativity> per_element;
};

// Throws InfeasibleError / NumericalError naming the offending element.
LedgerNegativity ledger_negativity(const SynthesisMap& e1, const CircuitLedger& ledger,
                                   const LedgerOptions& options = {});
// Negativity of one element under e1 (arity-2 elements use e1 x e1).
NegativityResult element_negativity(const SynthesisMap& e1, const SynthesisMap& e2,
                                    const CircuitElement& element, const LedgerOptions& options);

struct GateOp {
  GateId id = GateId::kH;
  std::optional<double> theta;
  std::vector<int> targets;
};

struct CircuitDescription {
  int n = 1;
  std::vector<std::string> initial;
  std::vector<GateOp> gates;
  std::optional<NoiseSpec> noise;
  // measure[q] is "Z" or empty for no measurement.
  std::vector<std::optional<std::string>> measure;
};

void validate_circuit(const CircuitDescription& c);
CircuitLedger circuit_to_ledger(const CircuitDescription& c);

}  // namespace quasineg
