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
#include "quasineg/error.hpp"
#include "quasineg/operators.hpp"
#include "test_util.hpp"

using namespace quasineg;
using quasineg::test::pauli;
using Catch::Approx;

TEST_CASE("hermitian basis is orthonormal with identity first", "[operators]") {
  for (int d : {2, 3, 4, 5}) {
    const auto& basis = hermitian_basis(d);
    REQUIRE(basis.size() == static_cast<size_t>(d * d));
    for (size_t i = 0; i < basis.size(); ++i) {
      for (size_t j = 0; j < basis.size(); ++j) {
        const Complex ip = (basis[i].matrix() * basis[j].matrix()).trace();
        CHECK(std::abs(ip - Complex(i == j ? 1.0 : 0.0, 0.0)) < 1e-12);
      }
      if (i > 0) CHECK(std::abs(basis[i].trace()) < 1e-12);
    }
    const CMatrix id = CMatrix::Identity(d, d) / std::sqrt(double(d));
    CHECK((basis[0].matrix() - id).norm() < 1e-14);
  }
  CHECK_THROWS_AS(hermitian_basis(1), ValidationError);
}

TEST_CASE("qubit basis is the scaled Pauli set", "[operators]") {
  const auto& b = hermitian_basis(2);
  const double r = 1.0 / std::numbers::sqrt2;
  // Order: identity, symmetric, antisymmetric, diagonal; sign conventions may flip.
  CHECK((b[1].matrix().cwiseAbs() - (r * pauli(1)).cwiseAbs()).norm() < 1e-14);
  CHECK((b[2].matrix().cwiseAbs() - (r * pauli(2)).cwiseAbs()).norm() < 1e-14);
  CHECK((b[3].matrix().cwiseAbs() - (r * pauli(3)).cwiseAbs()).norm() < 1e-14);
}

TEST_CASE("expand examples", "[operators]") {
  const BasisExpansion z = expand(HermitianOperator(pauli(3)));
  CHECK(z.coeffs.head(3).norm() < 1e-14);
  CHECK(std::abs(std::abs(z.coeffs(3)) - std::sqrt(2.0)) < 1e-14);

  const BasisExpansion half = expand(HermitianOperator::identity(2) * 0.5);
  CHECK(half.coeffs(0) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(half.coeffs.tail(3).norm() < 1e-14);

  std::mt19937_64 rng(7);
  for (int d : {2, 3, 4}) {
    for (int t = 0; t < 100; ++t) {
      const HermitianOperator a = test::random_hermitian(rng, d);
      const BasisExpansion c = expand(a);
      CHECK(frobenius_distance(reconstruct(c), a) < 1e-10);
      CHECK(a.trace() == Approx(std::sqrt(double(d)) * c.coeffs(0)).margin(1e-12));
      // Coefficients agree with Tr(A B_j) computed directly.
      const auto& basis = hermitian_basis(d);
      for (int j = 0; j < d * d; ++j) {
        CHECK(std::abs((a.matrix() * basis[j].matrix()).trace().real() - c.coeffs(j)) < 1e-12);
      }
    }
  }
}

TEST_CASE("non-Hermitian input is rejected", "[operators]") {
  CMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(HermitianOperator(m), ValidationError);
}

TEST_CASE("tensor products", "[operators]") {
  const HermitianOperator i4 = tensor(HermitianOperator::identity(2), HermitianOperator::identity(2));
  CHECK((i4.matrix() - CMatrix::Identity(4, 4)).norm() < 1e-15);

  Eigen::VectorXcd zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  const HermitianOperator p01 = tensor(HermitianOperator::projector(zero), HermitianOperator::projector(one));
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(1, 1) = 1;
  CHECK((p01.matrix() - expected).norm() < 1e-15);

  CHECK(std::abs(tensor(HermitianOperator(pauli(3)), HermitianOperator(pauli(3))).trace()) < 1e-15);

  std::mt19937_64 rng(3);
  const auto a = test::random_hermitian(rng, 2);
  const auto b = test::random_hermitian(rng, 3);
  const auto c = test::random_hermitian(rng, 2);
  CHECK(frobenius_distance(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-12);
  CHECK(tensor(a, b).trace() == Approx(a.trace() * b.trace()).margin(1e-12));
}

TEST_CASE("apply_channel examples", "[operators]") {
  std::mt19937_64 rng(11);
  const HermitianOperator a = test::random_hermitian(rng, 2);
  CHECK(frobenius_distance(apply_channel(KrausChannel::identity(2), a), a) < 1e-14);

  // Full damping sends any unit-trace operator, PSD or not, to |0><0|.
  const KrausChannel damp1 = noise_channel(NoiseKind::kAmplitudeDamping, 1.0);
  for (int t = 0; t < 10; ++t) {
    HermitianOperator h = test::random_hermitian(rng, 2);
    h = h + HermitianOperator::identity(2) * ((1.0 - h.trace()) / 2.0);
    CHECK(frobenius_distance(apply_channel(damp1, h), test::bloch_state(0, 0, 1)) < 1e-12);
  }

  for (double p : {0.0, 0.1, 0.4, 1.0}) {
    const HermitianOperator out = apply_channel(noise_channel(NoiseKind::kDepolarizing, p), test::bloch_state(0, 0, 1));
    CHECK(frobenius_distance(out, test::bloch_state(0, 0, 1.0 - p)) < 1e-12);
  }

  for (int t = 0; t < 100; ++t) {
    const HermitianOperator h = test::random_hermitian(rng, 2);
    for (auto kind : {NoiseKind::kDepolarizing, NoiseKind::kDephasing, NoiseKind::kAmplitudeDamping}) {
      const HermitianOperator out = apply_channel(noise_channel(kind, 0.3), h);
      CHECK(out.trace() == Approx(h.trace()).margin(1e-10));
      CHECK(((out.matrix() - out.matrix().adjoint()).norm()) < 1e-12);
    }
  }
  CHECK_THROWS_AS(apply_channel(KrausChannel::identity(4), a), ValidationError);
}

TEST_CASE("gate unitaries", "[operators]") {
  const CMatrix t = gate_unitary(GateId::kT);
  CHECK(std::abs(t(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(t(1, 1) - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
  CHECK(std::abs(t(0, 1)) + std::abs(t(1, 0)) == 0.0);

  const CMatrix cz = gate_unitary(GateId::kCZ);
  CMatrix cz_expected = CMatrix::Identity(4, 4);
  cz_expected(3, 3) = -1;
  CHECK((cz - cz_expected).norm() < 1e-15);

  const CMatrix rx = gate_unitary(GateId::kRx, std::numbers::pi);
  CHECK((rx - Complex(0, -1) * pauli(1)).norm() < 1e-15);

  // Rz(theta) = diag(e^{-i theta/2}, e^{i theta/2}).
  const CMatrix rz = gate_unitary(GateId::kRz, 0.7);
  CHECK(std::abs(rz(0, 0) - std::polar(1.0, -0.35)) < 1e-15);
  CHECK(std::abs(rz(1, 1) - std::polar(1.0, 0.35)) < 1e-15);

  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CHECK((gate_unitary(GateId::kH) - h).norm() < 1e-15);
  CMatrix s = CMatrix::Identity(2, 2);
  s(1, 1) = Complex(0, 1);
  CHECK((gate_unitary(GateId::kS) - s).norm() < 1e-15);
  CMatrix cx = CMatrix::Zero(4, 4);
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1;
  CHECK((gate_unitary(GateId::kCX) - cx).norm() < 1e-15);

  for (GateId g : {GateId::kH, GateId::kS, GateId::kT, GateId::kCX, GateId::kCZ}) {
    const CMatrix u = gate_unitary(g);
    CHECK((u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).norm() < 1e-12);
  }
  for (double th : {-3.0, -0.3, 0.0, 1.1, 2.9}) {
    for (GateId g : {GateId::kRx, GateId::kRz}) {
      const CMatrix u = gate_unitary(g, th);
      CHECK((u * u.adjoint() - CMatrix::Identity(2, 2)).norm() < 1e-12);
    }
  }
  CHECK_THROWS_AS(gate_unitary(GateId::kRx), ValidationError);
  CHECK_THROWS_AS(parse_gate_id("CCX"), ValidationError);
}

TEST_CASE("noise channels", "[operators]") {
  const KrausChannel d0 = noise_channel(NoiseKind::kDepolarizing, 0.0);
  std::mt19937_64 rng(5);
  const HermitianOperator a = test::random_hermitian(rng, 2);
  CHECK(frobenius_distance(apply_channel(d0, a), a) < 1e-14);

  const KrausChannel damp = noise_channel(NoiseKind::kAmplitudeDamping, 0.4);
  bool found = false;
  for (const auto& k : damp.kraus()) {
    if (std::abs(k(0, 1) - std::sqrt(0.4)) < 1e-15 && std::abs(k(0, 0)) + std::abs(k(1, 0)) + std::abs(k(1, 1)) == 0) {
      found = true;
    }
  }
  CHECK(found);

  for (auto kind : {NoiseKind::kDepolarizing, NoiseKind::kDephasing, NoiseKind::kAmplitudeDamping}) {
    for (double p : {0.0, 0.1, 0.2, 0.4, 1.0}) {
      const KrausChannel ch = noise_channel(kind, p);
      CMatrix sum = CMatrix::Zero(2, 2);
      for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
      CHECK((sum - CMatrix::Identity(2, 2)).norm() < 1e-10);
    }
    CHECK_THROWS_AS(noise_channel(kind, 1.5), ValidationError);
    CHECK_THROWS_AS(noise_channel(kind, -0.1), ValidationError);
  }
  CHECK(noise_channel(NoiseKind::kDepolarizing, 0.3).kraus().size() == 4);
  CHECK(noise_channel(NoiseKind::kDephasing, 0.3).kraus().size() == 2);
  CHECK(noise_channel(NoiseKind::kAmplitudeDamping, 0.3).kraus().size() == 2);
}

TEST_CASE("noisy gates", "[operators]") {
  std::mt19937_64 rng(9);
  const CMatrix h = gate_unitary(GateId::kH);
  const KrausChannel nh = noisy_gate(h, noise_channel(NoiseKind::kDepolarizing, 0.0), 1);
  for (int t = 0; t < 5; ++t) {
    const HermitianOperator rho = test::random_state(rng);
    const HermitianOperator direct(h * rho.matrix() * h.adjoint());
    CHECK(frobenius_distance(apply_channel(nh, rho), direct) < 1e-12);
  }
  const KrausChannel ncx = noisy_gate(gate_unitary(GateId::kCX), noise_channel(NoiseKind::kDephasing, 0.2), 2);
  CHECK(ncx.kraus().size() == 4);

  const KrausChannel nt = noisy_gate(gate_unitary(GateId::kT), noise_channel(NoiseKind::kAmplitudeDamping, 1.0), 1);
  for (int t = 0; t < 5; ++t) {
    CHECK(frobenius_distance(apply_channel(nt, test::random_state(rng)), test::bloch_state(0, 0, 1)) < 1e-12);
  }
  CHECK_THROWS_AS(noisy_gate(h, noise_channel(NoiseKind::kDephasing, 0.1), 2), ValidationError);

  // The joint two-qubit depolarizer is (1-p) V rho V^dag + p I/4.
  NoiseSpec spec;
  spec.kind = NoiseKind::kDepolarizing;
  spec.p = 0.3;
  const CMatrix cx = gate_unitary(GateId::kCX);
  const KrausChannel joint = noisy_gate(cx, spec, 2);
  const HermitianOperator rho2 = test::random_state(rng, 4);
  const CMatrix expected = 0.7 * cx * rho2.matrix() * cx.adjoint() + 0.3 * CMatrix::Identity(4, 4) / 4.0;
  CHECK((apply_channel(joint, rho2).matrix() - expected).norm() < 1e-12);

  spec.depol_scope = DepolarizingScope::kPerWire;
  CHECK(noisy_gate(cx, spec, 2).kraus().size() == 16);

  for (const auto& ch : {joint, ncx, nt, nh}) {
    CMatrix sum = CMatrix::Zero(ch.dim(), ch.dim());
    for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
    CHECK((sum - CMatrix::Identity(ch.dim(), ch.dim())).norm() < 1e-10);
  }
}

TEST_CASE("noise flag parsing", "[operators]") {
  const NoiseSpec s = parse_noise_spec("deph:0.4");
  CHECK(s.kind == NoiseKind::kDephasing);
  CHECK(s.p == 0.4);
  CHECK(parse_noise_spec("damp:0.1").kind == NoiseKind::kAmplitudeDamping);
  CHECK(parse_noise_spec("depol:0").p == 0.0);
  CHECK_THROWS_AS(parse_noise_spec("depol"), ValidationError);
  CHECK_THROWS_AS(parse_noise_spec("flip:0.1"), ValidationError);
  CHECK_THROWS_AS(parse_noise_spec("depol:1.2"), ValidationError);
  CHECK_THROWS_AS(parse_noise_spec("depol:abc"), ValidationError);
}

TEST_CASE("povm validation", "[operators]") {
  const Povm z = Povm::computational(2);
  CHECK(z.size() == 2);
  CHECK(Povm::trivial(2).size() == 1);
  std::vector<HermitianOperator> bad{test::bloch_state(0, 0, 1)};
  CHECK_THROWS_AS(Povm(bad), ValidationError);
  std::vector<HermitianOperator> negative{HermitianOperator::identity(2) * 1.5, HermitianOperator::identity(2) * -0.5};
  CHECK_THROWS_AS(Povm(negative), ValidationError);
}
