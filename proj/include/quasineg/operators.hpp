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

// Dense complex operator algebra for small qudit systems: Hermitian
// operators, an orthonormal Hermitian basis, Kraus channels, POVMs and the
// qubit gate / noise catalog.

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace quasineg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Absolute Frobenius tolerance used for operator identities.
inline constexpr double kOperatorTol = 1e-10;
// Tolerance on the anti-Hermitian part accepted by HermitianOperator.
inline constexpr double kHermiticityTol = 1e-12;

class HermitianOperator {
 public:
  HermitianOperator() = default;

  // Throws ValidationError if `m` is not square or not Hermitian within
  // `tol` (Frobenius norm of the anti-Hermitian part). The stored matrix is
  // the exact Hermitian part of `m`.
  explicit HermitianOperator(const CMatrix& m, double tol = kHermiticityTol);

  static HermitianOperator identity(int dim);
  // |psi><psi| for a (not necessarily normalized) vector.
  static HermitianOperator projector(const Eigen::VectorXcd& psi);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;

 private:
  CMatrix m_;
};

double frobenius_distance(const HermitianOperator& a, const HermitianOperator& b);

struct BasisExpansion {
  int dim = 0;
  RVector coeffs;  // length dim^2
};

// Orthonormal Hermitian basis of d x d operators: I/sqrt(d), then the
// symmetric off-diagonal, antisymmetric off-diagonal and diagonal
// generalized Gell-Mann matrices, each scaled to unit Hilbert-Schmidt norm.
// Throws ValidationError for d < 2.
const std::vector<HermitianOperator>& hermitian_basis(int d);

// coeffs_j = Tr(A B_j).
BasisExpansion expand(const HermitianOperator& a);
// Same as expand() but writes into a caller-provided vector of length d^2.
void expand_into(const CMatrix& a, Eigen::Ref<RVector> out);
HermitianOperator reconstruct(const BasisExpansion& c);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

class KrausChannel {
 public:
  KrausChannel() = default;
  // Throws ValidationError unless all operators are dim x dim and
  // sum_i K_i^dag K_i = I within kOperatorTol.
  explicit KrausChannel(std::vector<CMatrix> kraus);

  static KrausChannel identity(int dim);
  static KrausChannel unitary(const CMatrix& u);

  int dim() const { return dim_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

 private:
  int dim_ = 0;
  std::vector<CMatrix> kraus_;
};

// sum_i K_i A K_i^dag. A need not be positive.
HermitianOperator apply_channel(const KrausChannel& phi, const HermitianOperator& a);
// Heisenberg picture: sum_i K_i^dag A K_i.
HermitianOperator apply_adjoint(const KrausChannel& phi, const HermitianOperator& a);
// Sequential composition: second after first.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

class Povm {
 public:
  Povm() = default;
  // Throws ValidationError unless every effect has spectrum in [0, 1] (to
  // 1e-10) and the effects sum to the identity.
  explicit Povm(std::vector<HermitianOperator> effects);

  static Povm trivial(int dim);
  static Povm computational(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(effects_.size()); }
  const std::vector<HermitianOperator>& effects() const { return effects_; }

 private:
  int dim_ = 0;
  std::vector<HermitianOperator> effects_;
};

Povm tensor(const Povm& a, const Povm& b);

enum class GateId { kH, kS, kT, kCX, kCZ, kRx, kRz };

GateId parse_gate_id(std::string_view name);
std::string_view gate_name(GateId id);
int gate_arity(GateId id);
bool gate_takes_angle(GateId id);

// Throws ValidationError if an angle is missing for Rx/Rz or supplied for a
// fixed gate.
CMatrix gate_unitary(GateId id, std::optional<double> theta = std::nullopt);

enum class NoiseKind { kDepolarizing, kDephasing, kAmplitudeDamping };

// How depolarizing noise acts after a two-qubit gate.  kJoint applies the
// two-qubit depolarizing map rho -> (1-p) rho + p I/4; kPerWire applies the
// single-qubit channel to each wire independently.
enum class DepolarizingScope { kJoint, kPerWire };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kDepolarizing;
  double p = 0.0;
  DepolarizingScope depol_scope = DepolarizingScope::kJoint;
};

NoiseKind parse_noise_kind(std::string_view name);
std::string_view noise_name(NoiseKind kind);
// Parses "KIND:P", e.g. "depol:0.1".
NoiseSpec parse_noise_spec(std::string_view text);
std::string format_noise_spec(const NoiseSpec& spec);

// Single-qubit decoherence channel. Throws ValidationError for p outside [0, 1].
KrausChannel noise_channel(NoiseKind kind, double p);
// rho -> (1-p) rho + p I/d on `qubits` qubits (4^qubits Pauli Kraus operators).
KrausChannel multi_qubit_depolarizing(int qubits, double p);

// Unitary followed by the given single-qubit noise on every wire:
// {A_i U} for arity 1, {(A_i (x) A_j) V} for arity 2.
KrausChannel noisy_gate(const CMatrix& u, const KrausChannel& noise, int arity);
// As above, with the two-qubit depolarizing case governed by spec.depol_scope.
KrausChannel noisy_gate(const CMatrix& u, const NoiseSpec& noise, int arity);

}  // namespace quasineg
