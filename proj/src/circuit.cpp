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

#include "quasineg/circuit.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

#include "quasineg/error.hpp"
#include "quasineg/parallel.hpp"

namespace quasineg {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_fingerprint(const CMatrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out += format_double(m(i, j).real()) + "," + format_double(m(i, j).imag()) + ";";
    }
  }
  return out;
}

}  // namespace

const char* element_kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::kState: return "state";
    case ElementKind::kChannel: return "channel";
    case ElementKind::kPovm: return "povm";
  }
  return "?";
}

HermitianOperator named_state(std::string_view name) {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::VectorXcd psi(2);
  if (name == "0") {
    psi << 1, 0;
  } else if (name == "1") {
    psi << 0, 1;
  } else if (name == "+") {
    psi << r, r;
  } else if (name == "-") {
    psi << r, -r;
  } else if (name == "+i") {
    psi << r, Complex(0, r);
  } else if (name == "-i") {
    psi << r, Complex(0, -r);
  } else {
    throw ValidationError("unknown initial state '" + std::string(name) + "'");
  }
  return HermitianOperator::projector(psi);
}

std::string canonical_angle(double theta) {
  double r = std::round(theta * 1e12) / 1e12;
  if (r == 0.0) r = 0.0;  // folds -0
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12f", r);
  return buf;
}

CircuitElement state_element(std::string_view name) {
  CircuitElement e;
  e.kind = ElementKind::kState;
  e.arity = 1;
  e.state = named_state(name);
  e.label = "rho" + std::string(name);
  e.key = "state:" + std::string(name);
  return e;
}

CircuitElement state_element(std::string label, HermitianOperator rho, int arity) {
  CircuitElement e;
  e.kind = ElementKind::kState;
  e.arity = arity;
  e.key = "state:" + label + ":" + matrix_fingerprint(rho.matrix());
  e.label = std::move(label);
  e.state = std::move(rho);
  return e;
}

CircuitElement gate_element(GateId id, std::optional<double> theta,
                            const std::optional<NoiseSpec>& noise) {
  CircuitElement e;
  e.kind = ElementKind::kChannel;
  e.arity = gate_arity(id);
  e.gate = id;
  e.theta = theta;
  e.noise = noise;
  const CMatrix u = gate_unitary(id, theta);
  e.label = std::string(gate_name(id));
  e.key = "gate:" + e.label;
  if (theta) {
    e.label += "(" + canonical_angle(*theta) + ")";
    e.key += ":theta=" + canonical_angle(*theta);
  }
  if (noise) {
    e.channel = noisy_gate(u, *noise, e.arity);
    e.label += "[" + format_noise_spec(*noise) + "]";
    e.key += "|noise=" + std::string(noise_name(noise->kind)) + ":" + format_double(noise->p);
    if (noise->kind == NoiseKind::kDepolarizing && e.arity == 2) {
      e.key += noise->depol_scope == DepolarizingScope::kJoint ? "|joint" : "|per-wire";
    }
  } else {
    e.channel = KrausChannel::unitary(u);
  }
  return e;
}

CircuitElement channel_element(std::string label, KrausChannel phi, int arity) {
  CircuitElement e;
  e.kind = ElementKind::kChannel;
  e.arity = arity;
  e.key = "channel:" + label;
  for (const auto& k : phi.kraus()) e.key += "|" + matrix_fingerprint(k);
  e.label = std::move(label);
  e.channel = std::move(phi);
  return e;
}

CircuitElement povm_element(std::string_view name) {
  CircuitElement e;
  e.kind = ElementKind::kPovm;
  e.arity = 1;
  if (name == "Z") {
    e.povm = Povm::computational(2);
    e.label = "Fz";
  } else if (name == "I") {
    e.povm = Povm::trivial(2);
    e.label = "trivial";
  } else {
    throw ValidationError("unknown measurement '" + std::string(name) + "' (want Z or none)");
  }
  e.key = "povm:" + std::string(name);
  return e;
}

CircuitElement povm_element(std::string label, Povm f, int arity) {
  CircuitElement e;
  e.kind = ElementKind::kPovm;
  e.arity = arity;
  e.key = "povm:" + label;
  for (const auto& eff : f.effects()) e.key += "|" + matrix_fingerprint(eff.matrix());
  e.label = std::move(label);
  e.povm = std::move(f);
  return e;
}

void CircuitLedger::add(const CircuitElement& element, int multiplicity) {
  if (multiplicity < 1) throw ValidationError("CircuitLedger: multiplicity must be >= 1");
  for (auto& entry : entries_) {
    if (entry.element.key == element.key) {
      entry.multiplicity += multiplicity;
      return;
    }
  }
  entries_.push_back({element, multiplicity});
}

std::string CircuitLedger::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  mix("d=" + std::to_string(d_));
  for (const auto& e : entries_) {
    mix(e.element.key);
    mix("#" + std::to_string(e.multiplicity) + ";");
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::vector<std::string> block_names() { return {"c1q", "c1q_t", "c2q", "c2q_t"}; }

std::string canonical_block_name(std::string_view name) {
  if (name == "c1q") return "c1q";
  if (name == "c1q_t" || name == "c1q+t") return "c1q_t";
  if (name == "c2q") return "c2q";
  if (name == "c2q_t" || name == "c2q+t") return "c2q_t";
  throw ValidationError("unknown block '" + std::string(name) + "'");
}

CircuitLedger block(std::string_view name, const std::optional<NoiseSpec>& noise) {
  const std::string b = canonical_block_name(name);
  CircuitLedger ledger(2);
  ledger.add(state_element("0"));
  ledger.add(gate_element(GateId::kH, std::nullopt, noise));
  ledger.add(gate_element(GateId::kS, std::nullopt, noise));
  if (b == "c1q_t" || b == "c2q_t") ledger.add(gate_element(GateId::kT, std::nullopt, noise));
  if (b == "c2q" || b == "c2q_t") ledger.add(gate_element(GateId::kCX, std::nullopt, noise));
  ledger.add(povm_element("Z"));
  return ledger;
}

std::vector<double> variational_angles(int b) {
  if (b < 1) throw ValidationError("variational gate set needs B >= 1");
  std::vector<double> out;
  for (int k = 0; k < b; ++k) out.push_back(-std::numbers::pi + 2.0 * std::numbers::pi * k / b);
  return out;
}

CircuitLedger variational_gateset(int b, const std::optional<NoiseSpec>& noise) {
  const auto angles = variational_angles(b);
  CircuitLedger ledger(2);
  for (double t : angles) ledger.add(gate_element(GateId::kRx, t, noise));
  for (double t : angles) ledger.add(gate_element(GateId::kRz, t, noise));
  ledger.add(gate_element(GateId::kCZ, std::nullopt, noise), b);
  return ledger;
}

NegativityResult element_negativity(const SynthesisMap& e1, const SynthesisMap& e2,
                                    const CircuitElement& element, const LedgerOptions& options) {
  if (element.arity != 1 && element.arity != 2) {
    throw ValidationError("element " + element.label + ": arity must be 1 or 2");
  }
  const SynthesisMap& e = element.arity == 1 ? e1 : e2;
  switch (element.kind) {
    case ElementKind::kState: return min_neg_state(e, element.state, options.lp);
    case ElementKind::kChannel: return min_neg_channel(e, element.channel, options.lp);
    case ElementKind::kPovm: {
      if (element.povm.dim() != e.dim()) {
        throw ValidationError("element " + element.label + ": dimension does not match the frame");
      }
      return neg_measurement(e, element.povm, options.measurement_norm);
    }
  }
  throw ValidationError("unknown element kind");
}

LedgerNegativity ledger_negativity(const SynthesisMap& e1, const CircuitLedger& ledger,
                                   const LedgerOptions& options) {
  if (e1.dim() != ledger.d()) {
    throw ValidationError("frame dimension " + std::to_string(e1.dim()) +
                          " does not match ledger dimension " + std::to_string(ledger.d()));
  }
  const auto& entries = ledger.entries();
  bool needs_pair = false;
  for (const auto& entry : entries) needs_pair = needs_pair || entry.element.arity == 2;
  const SynthesisMap e2 = needs_pair ? product_frame({e1, e1}) : e1;

  std::vector<NegativityResult> results(entries.size());
  parallel_for(static_cast<int>(entries.size()), [&](int i) {
    results[static_cast<size_t>(i)] =
        element_negativity(e1, e2, entries[static_cast<size_t>(i)].element, options);
  });

  LedgerNegativity out;
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto& el = entries[i].element;
    const auto& r = results[i];
    if (r.status == NegStatus::kInfeasible) {
      throw InfeasibleError("element " + el.label + ": " + r.message);
    }
    if (r.status != NegStatus::kOptimal) {
      throw NumericalError("element " + el.label + ": " + r.message);
    }
    ElementNegativity en;
    en.label = el.label;
    en.kind = el.kind;
    en.arity = el.arity;
    en.multiplicity = entries[i].multiplicity;
    en.negativity_bits = r.value_log2;
    out.total_bits += en.multiplicity * en.negativity_bits;
    out.per_element.push_back(en);
  }
  return out;
}

void validate_circuit(const CircuitDescription& c) {
  if (c.n < 1) throw ValidationError("circuit: n must be >= 1");
  if (static_cast<int>(c.initial.size()) != c.n) {
    throw ValidationError("circuit: initial must list one state per qubit");
  }
  for (const auto& s : c.initial) named_state(s);
  if (static_cast<int>(c.measure.size()) > c.n) {
    throw ValidationError("circuit: measure refers to more qubits than n");
  }
  for (const auto& m : c.measure) {
    if (m && *m != "Z") throw ValidationError("circuit: measurement must be \"Z\" or null");
  }
  for (size_t g = 0; g < c.gates.size(); ++g) {
    const auto& op = c.gates[g];
    const std::string where = "circuit: gates[" + std::to_string(g) + "]";
    if (static_cast<int>(op.targets.size()) != gate_arity(op.id)) {
      throw ValidationError(where + ": wrong number of targets for " + std::string(gate_name(op.id)));
    }
    std::set<int> seen;
    for (int t : op.targets) {
      if (t < 0 || t >= c.n) throw ValidationError(where + ": target out of range");
      if (!seen.insert(t).second) throw ValidationError(where + ": targets must be distinct");
    }
    if (gate_takes_angle(op.id) != op.theta.has_value()) {
      throw ValidationError(where + ": angle required iff gate is Rx or Rz");
    }
  }
}

CircuitLedger circuit_to_ledger(const CircuitDescription& c) {
  validate_circuit(c);
  CircuitLedger ledger(2);
  for (const auto& s : c.initial) ledger.add(state_element(s));
  for (const auto& op : c.gates) ledger.add(gate_element(op.id, op.theta, c.noise));
  for (int q = 0; q < c.n; ++q) {
    const bool measured = q < static_cast<int>(c.measure.size()) && c.measure[static_cast<size_t>(q)];
    ledger.add(povm_element(measured ? "Z" : "I"));
  }
  return ledger;
}

}  // namespace quasineg
