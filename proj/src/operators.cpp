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

#include "quasineg/operators.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "quasineg/error.hpp"

namespace quasineg {

namespace {

constexpr Complex kI{0.0, 1.0};

CMatrix pauli(int k) {
  CMatrix m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

std::vector<HermitianOperator> build_basis(int d) {
  std::vector<HermitianOperator> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  basis.emplace_back(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      basis.emplace_back(m);
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = -kI * inv_sqrt2;
      m(k, j) = kI * inv_sqrt2;
      basis.emplace_back(m);
    }
  }
  for (int l = 1; l < d; ++l) {
    CMatrix m = CMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int k = 0; k < l; ++k) m(k, k) = norm;
    m(l, l) = -l * norm;
    basis.emplace_back(m);
  }
  return basis;
}

}  // namespace

HermitianOperator::HermitianOperator(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError("HermitianOperator: matrix must be square and non-empty");
  }
  const CMatrix anti = (m - m.adjoint()) * 0.5;
  if (anti.norm() > tol) {
    std::ostringstream os;
    os << "HermitianOperator: anti-Hermitian part has norm " << anti.norm();
    throw ValidationError(os.str());
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::projector(const Eigen::VectorXcd& psi) {
  return HermitianOperator(psi * psi.adjoint() / psi.squaredNorm());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  return HermitianOperator(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  return HermitianOperator(m_ - o.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(m_ * s);
}

double frobenius_distance(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) {
    throw ValidationError("frobenius_distance: dimension mismatch");
  }
  return (a.matrix() - b.matrix()).norm();
}

const std::vector<HermitianOperator>& hermitian_basis(int d) {
  if (d < 2) throw ValidationError("hermitian_basis: dimension must be >= 2");
  static std::mutex mutex;
  static std::map<int, std::vector<HermitianOperator>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, build_basis(d)).first;
  return it->second;
}

void expand_into(const CMatrix& a, Eigen::Ref<RVector> out) {
  const int d = static_cast<int>(a.rows());
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  int idx = 0;
  out(idx++) = a.trace().real() / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      out(idx++) = (a(j, k).real() + a(k, j).real()) * inv_sqrt2;
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      out(idx++) = (a(k, j).imag() - a(j, k).imag()) * inv_sqrt2;
    }
  }
  double partial = 0.0;
  for (int l = 1; l < d; ++l) {
    partial += a(l - 1, l - 1).real();
    out(idx++) = (partial - l * a(l, l).real()) / std::sqrt(static_cast<double>(l) * (l + 1));
  }
}

BasisExpansion expand(const HermitianOperator& a) {
  BasisExpansion e;
  e.dim = a.dim();
  if (e.dim < 2) throw ValidationError("expand: dimension must be >= 2");
  e.coeffs.resize(static_cast<Eigen::Index>(e.dim) * e.dim);
  expand_into(a.matrix(), e.coeffs);
  return e;
}

HermitianOperator reconstruct(const BasisExpansion& c) {
  if (c.coeffs.size() != static_cast<Eigen::Index>(c.dim) * c.dim) {
    throw ValidationError("reconstruct: coefficient vector must have length d^2");
  }
  const auto& basis = hermitian_basis(c.dim);
  CMatrix m = CMatrix::Zero(c.dim, c.dim);
  for (size_t j = 0; j < basis.size(); ++j) m += c.coeffs(static_cast<Eigen::Index>(j)) * basis[j].matrix();
  return HermitianOperator(m);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ValidationError("KrausChannel: no Kraus operators");
  dim_ = static_cast<int>(kraus_.front().rows());
  CMatrix sum = CMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_ || k.cols() != dim_) {
      throw ValidationError("KrausChannel: Kraus operators must all be d x d");
    }
    sum += k.adjoint() * k;
  }
  const double err = (sum - CMatrix::Identity(dim_, dim_)).norm();
  if (err > kOperatorTol) {
    std::ostringstream os;
    os << "KrausChannel: not trace preserving (|sum K^dag K - I| = " << err << ")";
    throw ValidationError(os.str());
  }
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel({CMatrix::Identity(dim, dim)});
}

KrausChannel KrausChannel::unitary(const CMatrix& u) { return KrausChannel({u}); }

HermitianOperator apply_channel(const KrausChannel& phi, const HermitianOperator& a) {
  if (phi.dim() != a.dim()) throw ValidationError("apply_channel: dimension mismatch");
  CMatrix out = CMatrix::Zero(a.dim(), a.dim());
  for (const auto& k : phi.kraus()) out.noalias() += k * a.matrix() * k.adjoint();
  return HermitianOperator(out);
}

HermitianOperator apply_adjoint(const KrausChannel& phi, const HermitianOperator& a) {
  if (phi.dim() != a.dim()) throw ValidationError("apply_adjoint: dimension mismatch");
  CMatrix out = CMatrix::Zero(a.dim(), a.dim());
  for (const auto& k : phi.kraus()) out.noalias() += k.adjoint() * a.matrix() * k;
  return HermitianOperator(out);
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.dim() != first.dim()) throw ValidationError("compose: dimension mismatch");
  std::vector<CMatrix> ks;
  ks.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& b : second.kraus()) {
    for (const auto& a : first.kraus()) ks.push_back(b * a);
  }
  return KrausChannel(std::move(ks));
}

Povm::Povm(std::vector<HermitianOperator> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("Povm: no effects");
  dim_ = effects_.front().dim();
  CMatrix sum = CMatrix::Zero(dim_, dim_);
  for (size_t k = 0; k < effects_.size(); ++k) {
    const auto& f = effects_[k];
    if (f.dim() != dim_) throw ValidationError("Povm: effect dimension mismatch");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(f.matrix(), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() < -kOperatorTol || ev.maxCoeff() > 1.0 + kOperatorTol) {
      throw ValidationError("Povm: effect " + std::to_string(k) + " has spectrum outside [0, 1]");
    }
    sum += f.matrix();
  }
  if ((sum - CMatrix::Identity(dim_, dim_)).norm() > kOperatorTol) {
    throw ValidationError("Povm: effects do not sum to the identity");
  }
}

Povm Povm::trivial(int dim) { return Povm({HermitianOperator::identity(dim)}); }

Povm Povm::computational(int dim) {
  std::vector<HermitianOperator> effects;
  for (int k = 0; k < dim; ++k) {
    CMatrix m = CMatrix::Zero(dim, dim);
    m(k, k) = 1.0;
    effects.emplace_back(m);
  }
  return Povm(std::move(effects));
}

Povm tensor(const Povm& a, const Povm& b) {
  std::vector<HermitianOperator> effects;
  for (const auto& fa : a.effects()) {
    for (const auto& fb : b.effects()) effects.push_back(tensor(fa, fb));
  }
  return Povm(std::move(effects));
}

GateId parse_gate_id(std::string_view name) {
  if (name == "H") return GateId::kH;
  if (name == "S") return GateId::kS;
  if (name == "T") return GateId::kT;
  if (name == "CX" || name == "CNOT") return GateId::kCX;
  if (name == "CZ") return GateId::kCZ;
  if (name == "Rx" || name == "RX") return GateId::kRx;
  if (name == "Rz" || name == "RZ") return GateId::kRz;
  throw ValidationError("unknown gate '" + std::string(name) + "'");
}

std::string_view gate_name(GateId id) {
  switch (id) {
    case GateId::kH: return "H";
    case GateId::kS: return "S";
    case GateId::kT: return "T";
    case GateId::kCX: return "CX";
    case GateId::kCZ: return "CZ";
    case GateId::kRx: return "Rx";
    case GateId::kRz: return "Rz";
  }
  return "?";
}

int gate_arity(GateId id) {
  return (id == GateId::kCX || id == GateId::kCZ) ? 2 : 1;
}

bool gate_takes_angle(GateId id) { return id == GateId::kRx || id == GateId::kRz; }

CMatrix gate_unitary(GateId id, std::optional<double> theta) {
  if (gate_takes_angle(id) && !theta) {
    throw ValidationError("gate " + std::string(gate_name(id)) + " requires an angle");
  }
  if (!gate_takes_angle(id) && theta) {
    throw ValidationError("gate " + std::string(gate_name(id)) + " takes no angle");
  }
  CMatrix u;
  switch (id) {
    case GateId::kH:
      u = CMatrix(2, 2);
      u << 1, 1, 1, -1;
      u /= std::numbers::sqrt2;
      break;
    case GateId::kS:
      u = CMatrix::Identity(2, 2);
      u(1, 1) = kI;
      break;
    case GateId::kT:
      u = CMatrix::Identity(2, 2);
      u(1, 1) = std::polar(1.0, std::numbers::pi / 4);
      break;
    case GateId::kCX:
      u = CMatrix::Zero(4, 4);
      u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
      break;
    case GateId::kCZ:
      u = CMatrix::Identity(4, 4);
      u(3, 3) = -1.0;
      break;
    case GateId::kRx:
      u = std::cos(*theta / 2) * pauli(0) - kI * std::sin(*theta / 2) * pauli(1);
      break;
    case GateId::kRz:
      u = std::cos(*theta / 2) * pauli(0) - kI * std::sin(*theta / 2) * pauli(3);
      break;
  }
  return u;
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "depol") return NoiseKind::kDepolarizing;
  if (name == "deph") return NoiseKind::kDephasing;
  if (name == "damp") return NoiseKind::kAmplitudeDamping;
  throw ValidationError("unknown noise kind '" + std::string(name) + "' (want depol, deph or damp)");
}

std::string_view noise_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kDepolarizing: return "depol";
    case NoiseKind::kDephasing: return "deph";
    case NoiseKind::kAmplitudeDamping: return "damp";
  }
  return "?";
}

NoiseSpec parse_noise_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("noise must look like KIND:P, got '" + std::string(text) + "'");
  }
  NoiseSpec spec;
  spec.kind = parse_noise_kind(text.substr(0, colon));
  const std::string num(text.substr(colon + 1));
  size_t used = 0;
  try {
    spec.p = std::stod(num, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != num.size()) {
    throw ValidationError("noise strength '" + num + "' is not a number");
  }
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw ValidationError("noise strength must lie in [0, 1]");
  }
  return spec;
}

std::string format_noise_spec(const NoiseSpec& spec) {
  std::ostringstream os;
  os << noise_name(spec.kind) << ':' << spec.p;
  return os.str();
}

KrausChannel multi_qubit_depolarizing(int qubits, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("depolarizing strength must lie in [0, 1]");
  if (qubits < 1) throw ValidationError("multi_qubit_depolarizing: need at least one qubit");
  const int count = 1 << (2 * qubits);
  std::vector<CMatrix> ks;
  ks.reserve(count);
  for (int label = 0; label < count; ++label) {
    CMatrix op = CMatrix::Identity(1, 1);
    for (int q = qubits - 1; q >= 0; --q) op = kron(op, pauli((label >> (2 * q)) & 3));
    const double w = (label == 0) ? 1.0 - p * (count - 1) / count : p / count;
    ks.push_back(std::sqrt(w) * op);
  }
  return KrausChannel(std::move(ks));
}

KrausChannel noise_channel(NoiseKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("noise strength must lie in [0, 1]");
  switch (kind) {
    case NoiseKind::kDepolarizing:
      return multi_qubit_depolarizing(1, p);
    case NoiseKind::kDephasing:
      return KrausChannel({std::sqrt(1.0 - p / 2) * pauli(0), std::sqrt(p / 2) * pauli(3)});
    case NoiseKind::kAmplitudeDamping: {
      CMatrix a1 = CMatrix::Zero(2, 2);
      a1(0, 0) = 1.0;
      a1(1, 1) = std::sqrt(1.0 - p);
      CMatrix a2 = CMatrix::Zero(2, 2);
      a2(0, 1) = std::sqrt(p);
      return KrausChannel({a1, a2});
    }
  }
  throw ValidationError("unknown noise kind");
}

KrausChannel noisy_gate(const CMatrix& u, const KrausChannel& noise, int arity) {
  if (arity != 1 && arity != 2) throw ValidationError("noisy_gate: arity must be 1 or 2");
  const int dim = 1 << arity;
  if (u.rows() != dim || u.cols() != dim) {
    throw ValidationError("noisy_gate: unitary size does not match arity");
  }
  if (noise.dim() != 2) throw ValidationError("noisy_gate: noise must be a single-qubit channel");
  std::vector<CMatrix> ks;
  if (arity == 1) {
    for (const auto& a : noise.kraus()) ks.push_back(a * u);
  } else {
    for (const auto& a : noise.kraus()) {
      for (const auto& b : noise.kraus()) ks.push_back(kron(a, b) * u);
    }
  }
  return KrausChannel(std::move(ks));
}

KrausChannel noisy_gate(const CMatrix& u, const NoiseSpec& noise, int arity) {
  if (arity == 2 && noise.kind == NoiseKind::kDepolarizing &&
      noise.depol_scope == DepolarizingScope::kJoint) {
    if (u.rows() != 4 || u.cols() != 4) {
      throw ValidationError("noisy_gate: unitary size does not match arity");
    }
    const KrausChannel depol = multi_qubit_depolarizing(2, noise.p);
    std::vector<CMatrix> ks;
    for (const auto& a : depol.kraus()) ks.push_back(a * u);
    return KrausChannel(std::move(ks));
  }
  return noisy_gate(u, noise_channel(noise.kind, noise.p), arity);
}

}  // namespace quasineg
