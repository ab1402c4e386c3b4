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

#include <functional>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "quasineg/error.hpp"
#include "quasineg/montecarlo.hpp"
#include "quasineg/parallel.hpp"
#include "test_util.hpp"

using namespace quasineg;
using Catch::Approx;

namespace {

RVector vec(std::initializer_list<double> v) {
  return RVector::Map(std::vector<double>(v).data(), static_cast<Eigen::Index>(v.size()));
}

RVector random_quasi(std::mt19937_64& rng, int m) {
  return test::random_quasistochastic(rng, m, 1).col(0);
}

// Sum of Pr(x) chi(x) over every path, computed by explicit recursion.
double enumerate(const SamplingPlan& plan, int layers, int m) {
  std::vector<int> path(static_cast<size_t>(layers + 1));
  double total = 0.0;
  std::function<void(int)> rec = [&](int depth) {
    if (depth == layers + 1) {
      const TrajectoryWeight w = trajectory_weight(plan, path);
      total += w.probability * w.chi;
      return;
    }
    for (int x = 0; x < m; ++x) {
      path[static_cast<size_t>(depth)] = x;
      rec(depth + 1);
    }
  };
  rec(0);
  return total;
}

CircuitDescription h_circuit() {
  CircuitDescription c;
  c.n = 1;
  c.initial = {"0"};
  c.gates = {{GateId::kH, std::nullopt, {0}}};
  c.measure = {std::string("Z")};
  return c;
}

CircuitDescription bell_circuit() {
  CircuitDescription c;
  c.n = 2;
  c.initial = {"0", "0"};
  c.gates = {{GateId::kH, std::nullopt, {0}}, {GateId::kCX, std::nullopt, {0, 1}}};
  c.measure = {std::string("Z"), std::string("Z")};
  return c;
}

}  // namespace

TEST_CASE("build_plan examples", "[montecarlo]") {
  const SamplingPlan p = build_plan(QuasiDistribution(vec({0.75, 0.75, -0.5})), {}, vec({1, 1, 1}));
  CHECK(p.p_norm[0] == Approx(2.0).epsilon(1e-15));
  CHECK((p.p_st[0] - vec({0.375, 0.375, 0.25})).norm() < 1e-15);
  CHECK(p.n_tot_ln == Approx(std::log(2.0)).epsilon(1e-14));

  const SamplingPlan pos = build_plan(QuasiDistribution(vec({0.2, 0.8})), {QuasiStochasticMatrix(RMatrix::Identity(2, 2))},
                                      vec({1, 0}));
  CHECK(pos.p_norm[0] == 1.0);
  CHECK(pos.layers[0].col_norms.maxCoeff() == 1.0);

  CHECK_THROWS_AS(build_plan(QuasiDistribution(vec({0.5, 0.5})), {QuasiStochasticMatrix(RMatrix::Identity(3, 3))},
                             vec({1, 0})),
                  ValidationError);
  CHECK_THROWS_AS(build_plan(QuasiDistribution(vec({0.5, 0.5})), {}, vec({1, 0, 0})), ValidationError);
}

TEST_CASE("deterministic trajectory", "[montecarlo]") {
  const SamplingPlan p = build_plan(QuasiDistribution(vec({1, 0})), {QuasiStochasticMatrix(RMatrix::Identity(2, 2))},
                                    vec({1, 0}));
  for (long long n : {1LL, 7LL, 5000LL}) {
    const EstimateReport r = estimate(p, n, 42);
    CHECK(r.q_est == 1.0);
    CHECK(r.n_samples == n);
  }
  CHECK_THROWS_AS(estimate(p, 0, 1), ValidationError);
}

TEST_CASE("hoeffding sample counts", "[montecarlo]") {
  CHECK(hoeffding_samples(0.0, 0.1, 0.05) == static_cast<long long>(std::ceil(200 * std::log(40.0))));
  CHECK(hoeffding_samples(0.0, 0.1, 0.05) == 738);
  CHECK(hoeffding_samples(0.0, 1.0, 2.0 / std::exp(2.0)) == 4);
  const double base = 2.0 / (0.05 * 0.05) * std::log(2.0 / 0.1);
  CHECK(hoeffding_samples(0.5, 0.05, 0.1) == static_cast<long long>(std::ceil(base * std::exp(1.0))));
  CHECK_THROWS_AS(hoeffding_samples(0.0, 0.0, 0.05), ValidationError);
  CHECK_THROWS_AS(hoeffding_samples(0.0, 0.1, 0.0), ValidationError);
  CHECK_THROWS_AS(hoeffding_samples(0.0, 0.1, 1.0), ValidationError);
}

TEST_CASE("enumeration identity on random plans", "[montecarlo]") {
  std::mt19937_64 rng(314);
  for (int m = 2; m <= 6; ++m) {
    for (int layers = 0; layers <= 2; ++layers) {
      for (int t = 0; t < 5; ++t) {
        const RVector p = random_quasi(rng, m);
        std::vector<QuasiStochasticMatrix> ls;
        RVector direct = p;
        for (int l = 0; l < layers; ++l) {
          const RMatrix s = test::random_quasistochastic(rng, m, m);
          ls.emplace_back(s);
          direct = s * direct;
        }
        RVector v(m);
        std::uniform_real_distribution<double> u(-1, 1);
        for (int i = 0; i < m; ++i) v(i) = u(rng);
        const SamplingPlan plan = build_plan(QuasiDistribution(p), ls, v);
        const double exact = v.dot(direct);
        CHECK(enumerate(plan, layers, m) == Approx(exact).margin(1e-12));
        CHECK(plan_exact_value(plan) == Approx(exact).margin(1e-12));
      }
    }
  }
}

TEST_CASE("sampled weights respect the uniform bound", "[montecarlo]") {
  std::mt19937_64 rng(8);
  const RVector p = random_quasi(rng, 4);
  const RMatrix s = test::random_quasistochastic(rng, 4, 4);
  RVector v(4);
  v << 0.5, -0.25, 1.0, 0.0;
  const SamplingPlan plan = build_plan(QuasiDistribution(p), {QuasiStochasticMatrix(s)}, v);
  const EstimateReport r = estimate(plan, 20000, 5);
  CHECK(r.max_abs_chi <= std::exp(plan.n_tot_ln) + 1e-12);
  const double expected_ln = std::log(p.lpNorm<1>()) + std::log(s.cwiseAbs().colwise().sum().maxCoeff()) +
                             std::log(v.cwiseAbs().maxCoeff());
  CHECK(plan.n_tot_ln == Approx(expected_ln).margin(1e-12));
}

TEST_CASE("estimates are reproducible and thread-count invariant", "[montecarlo]") {
  std::mt19937_64 rng(1);
  const RVector p = random_quasi(rng, 5);
  const RMatrix s = test::random_quasistochastic(rng, 5, 5);
  const SamplingPlan plan = build_plan(QuasiDistribution(p), {QuasiStochasticMatrix(s)}, RVector::Ones(5));
  set_worker_threads(1);
  const EstimateReport a = estimate(plan, 50000, 9);
  set_worker_threads(3);
  const EstimateReport b = estimate(plan, 50000, 9);
  set_worker_threads(1);
  CHECK(a.q_est == b.q_est);
  CHECK(estimate(plan, 50000, 10).q_est != a.q_est);
}

TEST_CASE("exact probability oracle", "[montecarlo]") {
  CHECK(exact_probability(h_circuit(), 0) == Approx(0.5).margin(1e-14));
  CircuitDescription t = h_circuit();
  t.gates = {{GateId::kT, std::nullopt, {0}}};
  CHECK(exact_probability(t, 0) == Approx(1.0).margin(1e-14));
  CHECK(exact_probability(bell_circuit(), 0) == Approx(0.5).margin(1e-14));
  CHECK(exact_probability(bell_circuit(), 3) == Approx(0.5).margin(1e-14));
  CHECK(exact_probability(bell_circuit(), 1) == Approx(0.0).margin(1e-14));

  CircuitDescription big;
  big.n = 5;
  big.initial.assign(5, "0");
  big.measure.assign(5, std::string("Z"));
  CHECK_THROWS_AS(exact_probability(big, 0), SizeCapError);
}

TEST_CASE("circuit plans reproduce the dense oracle", "[montecarlo]") {
  for (const char* f : {"wootters", "sic", "stabilizer1q", "lambda_cube"}) {
    const SynthesisMap e = catalog_frame(f).synthesis;
    for (const auto& c : {h_circuit(), bell_circuit()}) {
      for (int o = 0; o < measured_outcome_count(c); ++o) {
        const SamplingPlan plan = build_circuit_plan(c, e, o);
        CHECK(plan_exact_value(plan) == Approx(exact_probability(c, o)).margin(1e-9));
      }
    }
  }
  // Noisy circuits too.
  CircuitDescription c = bell_circuit();
  c.gates.push_back({GateId::kT, std::nullopt, {1}});
  c.gates.push_back({GateId::kH, std::nullopt, {1}});
  c.noise = NoiseSpec{NoiseKind::kAmplitudeDamping, 0.3};
  const SamplingPlan plan = build_circuit_plan(c, catalog_frame("stabilizer1q").synthesis, 2);
  CHECK(plan_exact_value(plan) == Approx(exact_probability(c, 2)).margin(1e-9));
}

TEST_CASE("H circuit estimate lands within eps", "[montecarlo]") {
  const SamplingPlan plan = build_circuit_plan(h_circuit(), catalog_frame("wootters").synthesis, 0);
  const long long n = hoeffding_samples(plan.n_tot_ln, 0.02, 0.05);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) hits += std::abs(estimate(plan, n, seed).q_est - 0.5) < 0.02;
  CHECK(hits >= 18);

  const SamplingPlan bell = build_circuit_plan(bell_circuit(), catalog_frame("stabilizer1q").synthesis, 0);
  const long long nb = hoeffding_samples(bell.n_tot_ln, 0.02, 0.05);
  CHECK(std::abs(estimate(bell, nb, 3).q_est - 0.5) < 0.02);
}
