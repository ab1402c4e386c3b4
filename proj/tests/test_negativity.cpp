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
#include "quasineg/frames.hpp"
#include "quasineg/negativity.hpp"
#include "quasineg/oracle.hpp"
#include "test_util.hpp"

using namespace quasineg;
using Catch::Approx;

namespace {

const std::vector<std::string> kQubitFrames{"wootters", "sic", "stabilizer1q", "lambda_cube"};

HermitianOperator h_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return test::bloch_state(r, r, 0);
}

}  // namespace

TEST_CASE("negativity functionals", "[negativity]") {
  CHECK(neg_vector(RVector::Constant(2, 0.5)) == 0.0);
  RVector q(3);
  q << 0.75, 0.75, -0.5;
  CHECK(neg_vector(q) == Approx(1.0).epsilon(1e-15));
  CHECK(neg_matrix(RMatrix::Identity(2, 2)) == 0.0);
  RMatrix s(2, 2);
  s << 1.5, 0.2, -0.5, 0.8;
  CHECK(neg_matrix(s) == Approx(1.0).epsilon(1e-15));
  RVector w(3);
  w << 0.5, -1.0, 0.25;
  CHECK(neg_obs(w) == Approx(0.0).margin(1e-15));
  w(0) = 4;
  CHECK(neg_obs(w) == Approx(2.0).epsilon(1e-15));
  CHECK(clamp_negativity(-5e-10) == 0.0);
  CHECK(clamp_negativity(0.3) == 0.3);
}

TEST_CASE("min_neg_state examples", "[negativity]") {
  const SynthesisMap stab = catalog_frame("stabilizer1q").synthesis;
  const NegativityResult zero = min_neg_state(stab, test::bloch_state(0, 0, 1));
  REQUIRE(zero.status == NegStatus::kOptimal);
  CHECK(zero.value_log2 == 0.0);
  RVector point = RVector::Zero(6);
  point(4) = 1;  // |0> is the fifth element
  CHECK((RVector(zero.witness.col(0)) - point).norm() < 1e-9);

  // Robustness of |H> = T|+> over the six stabilizer states is sqrt(2).
  const NegativityResult h = min_neg_state(stab, h_state());
  REQUIRE(h.status == NegStatus::kOptimal);
  CHECK(h.value_log2 == Approx(0.5).margin(1e-9));
  CHECK(h.value_ln == Approx(0.5 * std::numbers::ln2).margin(1e-9));
  CHECK(RVector(h.witness.col(0)).lpNorm<1>() == Approx(std::sqrt(2.0)).epsilon(1e-9));

  for (const auto& name : kQubitFrames) {
    const NegativityResult mixed = min_neg_state(catalog_frame(name).synthesis, HermitianOperator::identity(2) * 0.5);
    REQUIRE(mixed.status == NegStatus::kOptimal);
    CHECK(mixed.value_log2 == 0.0);
  }
  CHECK_THROWS_AS(min_neg_state(stab, HermitianOperator::identity(2)), ValidationError);
}

TEST_CASE("witness reconstruction and optimality dominance", "[negativity]") {
  std::mt19937_64 rng(31);
  for (const auto& name : kQubitFrames) {
    const Frame f = catalog_frame(name);
    for (int t = 0; t < 100; ++t) {
      const HermitianOperator rho = test::random_state(rng);
      const NegativityResult r = min_neg_state(f.synthesis, rho);
      REQUIRE(r.status == NegStatus::kOptimal);
      const RVector p = r.witness.col(0);
      CHECK(frobenius_distance(synthesize_raw(f.synthesis, p), rho) < 1e-8);
      CHECK(p.sum() == Approx(1.0).margin(1e-9));
      if (f.analysis) CHECK(r.value_log2 <= neg_vector(analyze(*f.analysis, rho)) + 1e-7);
    }
  }
}

TEST_CASE("min_neg_channel examples", "[negativity]") {
  const SynthesisMap stab = catalog_frame("stabilizer1q").synthesis;
  for (const auto& name : kQubitFrames) {
    const SynthesisMap e = catalog_frame(name).synthesis;
    const NegativityResult id = min_neg_channel(e, KrausChannel::identity(2));
    REQUIRE(id.status == NegStatus::kOptimal);
    CHECK(id.value_log2 == 0.0);
    if (name == "wootters" || name == "sic") CHECK((id.witness - RMatrix::Identity(4, 4)).norm() < 1e-9);
  }
  const NegativityResult h = min_neg_channel(stab, KrausChannel::unitary(gate_unitary(GateId::kH)));
  CHECK(h.value_log2 == 0.0);

  const KrausChannel t = KrausChannel::unitary(gate_unitary(GateId::kT));
  const NegativityResult tn = min_neg_channel(stab, t);
  CHECK(tn.value_log2 == Approx(0.5).margin(1e-9));
  CHECK(tn.worst_index < 4);  // an equatorial column
  for (int m = 0; m < 6; ++m) {
    const RVector col = tn.witness.col(m);
    CHECK(frobenius_distance(synthesize_raw(stab, col), apply_channel(t, stab.op(m))) < 1e-8);
  }
}

TEST_CASE("neg_measurement examples", "[negativity]") {
  for (const auto& name : kQubitFrames) {
    const SynthesisMap e = catalog_frame(name).synthesis;
    CHECK(neg_measurement(e, Povm::trivial(2)).value_log2 == 0.0);
    CHECK(neg_measurement(e, Povm::trivial(2), MeasurementNorm::kColumnL1).value_log2 == 0.0);
  }
  CHECK(neg_measurement(catalog_frame("stabilizer1q").synthesis, Povm::computational(2)).value_log2 == 0.0);
  CHECK(neg_measurement(catalog_frame("wootters").synthesis, Povm::computational(2)).value_log2 == 0.0);

  // SIC: e = (I + sqrt3 v.sigma)/2 with v in {+-1}^3, so Z-basis entries are (1 +- sqrt3)/2.
  const SynthesisMap sic = catalog_frame("sic").synthesis;
  const double r3 = std::sqrt(3.0);
  const double max_entry = (1 + r3) / 2;
  CHECK(neg_measurement(sic, Povm::computational(2)).value_log2 == Approx(std::log2(max_entry)).margin(1e-12));
  CHECK(neg_measurement(sic, Povm::computational(2), MeasurementNorm::kColumnL1).value_log2 ==
        Approx(std::log2(r3)).margin(1e-12));
}

TEST_CASE("brute-force oracle examples", "[negativity]") {
  std::mt19937_64 rng(17);
  const Frame w = catalog_frame("wootters");
  for (int t = 0; t < 10; ++t) {
    const HermitianOperator rho = test::random_state(rng);
    CHECK(brute_force_oracle(w.synthesis, rho) == Approx(analyze(*w.analysis, rho).values().lpNorm<1>()).epsilon(1e-9));
  }
  CHECK(brute_force_oracle(catalog_frame("stabilizer1q").synthesis, h_state()) ==
        Approx(std::sqrt(2.0)).epsilon(1e-9));
  const SynthesisMap cube = catalog_frame("lambda_cube").synthesis;
  const double b[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (const auto& v : b) CHECK(brute_force_oracle(cube, test::bloch_state(v[0], v[1], v[2])) == Approx(1.0).epsilon(1e-9));

  std::vector<HermitianOperator> many(13, HermitianOperator::identity(2) * 0.5);
  CHECK_THROWS_AS(brute_force_oracle(SynthesisMap(many), h_state()), SizeCapError);
}

TEST_CASE("LP agrees with the oracle on random states", "[negativity]") {
  std::mt19937_64 rng(99);
  for (const auto& name : kQubitFrames) {
    const SynthesisMap e = catalog_frame(name).synthesis;
    for (int t = 0; t < 50; ++t) {
      const HermitianOperator rho = test::random_state(rng);
      const double lp = std::pow(2.0, min_neg_state(e, rho).value_log2);
      CHECK(lp == Approx(brute_force_oracle(e, rho)).margin(1e-6));
    }
  }
}

TEST_CASE("matrix negativity is subadditive and tensor additive", "[negativity]") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> dim(2, 5);
  for (int t = 0; t < 200; ++t) {
    const int a = dim(rng), b = dim(rng), c = dim(rng);
    const RMatrix sa = test::random_quasistochastic(rng, a, b);
    const RMatrix sb = test::random_quasistochastic(rng, b, c);
    CHECK(neg_matrix(sa * sb) <= neg_matrix(sa) + neg_matrix(sb) + 1e-9);
    const RMatrix sc = test::random_quasistochastic(rng, c, a);
    CHECK(neg_matrix(test::kron_real(sa, sc)) == Approx(neg_matrix(sa) + neg_matrix(sc)).margin(1e-9));
  }
}

TEST_CASE("channel negativity is subadditive under composition", "[negativity]") {
  const SynthesisMap stab = catalog_frame("stabilizer1q").synthesis;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> angle(-3.1, 3.1), prob(0.0, 0.4);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int t = 0; t < 20; ++t) {
    const auto k1 = static_cast<NoiseKind>(kind(rng));
    const auto k2 = static_cast<NoiseKind>(kind(rng));
    const KrausChannel a = noisy_gate(gate_unitary(GateId::kRx, angle(rng)), noise_channel(k1, prob(rng)), 1);
    const KrausChannel b = noisy_gate(gate_unitary(GateId::kRz, angle(rng)), noise_channel(k2, prob(rng)), 1);
    const double na = min_neg_channel(stab, a).value_log2;
    const double nb = min_neg_channel(stab, b).value_log2;
    CHECK(min_neg_channel(stab, compose(b, a)).value_log2 <= na + nb + 1e-9);
  }
}

TEST_CASE("state negativity is additive over product frames", "[negativity]") {
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<HermitianOperator> states{h_state(), test::bloch_state(0, 0, 1), test::bloch_state(r, 0, r),
                                              HermitianOperator::identity(2) * 0.5};
  for (const char* fa : {"stabilizer1q", "wootters", "lambda_cube"}) {
    for (const char* fb : {"stabilizer1q", "sic"}) {
      const SynthesisMap ea = catalog_frame(fa).synthesis, eb = catalog_frame(fb).synthesis;
      const SynthesisMap eab = product_frame({ea, eb});
      for (const auto& ra : states) {
        for (const auto& rb : states) {
          const double sum = min_neg_state(ea, ra).value_log2 + min_neg_state(eb, rb).value_log2;
          CHECK(min_neg_state(eab, tensor(ra, rb)).value_log2 == Approx(sum).margin(1e-6));
        }
      }
    }
  }
}
