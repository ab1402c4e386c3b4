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

#include <cstdint>
#include <vector>

#include "quasineg/circuit.hpp"
#include "quasineg/frames.hpp"

namespace quasineg {

inline constexpr int kExactMaxQubits = 4;

// One layer acts on a subset of sites with a local quasistochastic matrix.
// For two sites the local index is x_first * M_second + x_second.
struct PlanLayer {
  std::vector<int> sites;
  RMatrix s;
  // Derived data.
  RMatrix s_st;                               // |S| with unit column sums
  RVector col_norms;                          // ||S_{.y}||_1
  std::vector<std::vector<double>> cdf;       // per column
};

struct SamplingPlan {
  std::vector<int> site_dims;
  std::vector<RVector> p;        // per-site quasidistributions
  std::vector<RVector> p_st;
  std::vector<double> p_norm;
  std::vector<std::vector<double>> p_cdf;
  std::vector<PlanLayer> layers;
  std::vector<RVector> v;        // per-site effect rows
  // ln ||p||_1 + sum ln ||S|| + ln ||v||_inf, summed over sites and layers.
  double n_tot_ln = 0.0;
};

// Single-site plan: x_0 ~ p, x_l ~ S^(l)(. | x_{l-1}), weight v_{x_L}.
SamplingPlan build_plan(const QuasiDistribution& p, const std::vector<QuasiStochasticMatrix>& layers,
                        const RVector& v);
// Multi-site plan; every column of every layer must sum to 1.
SamplingPlan build_site_plan(std::vector<RVector> p, std::vector<PlanLayer> layers,
                             std::vector<RVector> v);

struct TrajectoryWeight {
  double probability = 0.0;
  double chi = 0.0;
};
// Single-site plans only: path = (x_0, ..., x_L).
TrajectoryWeight trajectory_weight(const SamplingPlan& plan, const std::vector<int>& path);

// v . S^(L) ... S^(1) . p by dense contraction over the joint index space.
double plan_exact_value(const SamplingPlan& plan);

struct EstimateReport {
  double q_est = 0.0;
  long long n_samples = 0;
  double n_tot_ln = 0.0;
  double n_tot_log2 = 0.0;
  // Hoeffding half-width guaranteed at confidence 1 - delta for n samples.
  double hoeffding_bound = 0.0;
  double max_abs_chi = 0.0;
};

EstimateReport estimate(const SamplingPlan& plan, long long n, std::uint64_t seed,
                        double delta = 0.05);

long long hoeffding_samples(double n_tot_ln, double eps, double delta);

// Outcome index enumerates the measured qubits in increasing order, the
// lowest measured qubit being the most significant bit.
int measured_outcome_count(const CircuitDescription& c);
SamplingPlan build_circuit_plan(const CircuitDescription& c, const SynthesisMap& e1, int outcome,
                                const LpOptions& lp = {});
double exact_probability(const CircuitDescription& c, int outcome);

}  // namespace quasineg
