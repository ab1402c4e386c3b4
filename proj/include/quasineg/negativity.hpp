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

#include <string>

#include "quasineg/frames.hpp"
#include "quasineg/lp.hpp"

namespace quasineg {

inline constexpr double kNegativityClamp = 1e-9;
inline constexpr double kReconstructionTol = 1e-8;

enum class NegStatus { kOptimal, kInfeasible, kNumericalFailure };

const char* neg_status_name(NegStatus s);

// How 𝒩(e, F) is scored. kMaxEntry is log max_kl |V_kl|; kColumnL1 is the
// induced matrix norm log max_l sum_k |V_kl|.
enum class MeasurementNorm { kMaxEntry, kColumnL1 };

MeasurementNorm parse_measurement_norm(std::string_view s);
const char* measurement_norm_name(MeasurementNorm n);

struct NegativityResult {
  double value_log2 = 0.0;
  double value_ln = 0.0;
  NegStatus status = NegStatus::kOptimal;
  // States: M x 1. Channels: M x M (column m represents Phi[e_m]).
  // Measurements: K x M.
  RMatrix witness;
  // Column index that attains the maximum (channels, measurements) or fails.
  int worst_index = -1;
  std::string message;
};

// log2 of the l1 norm, the max column l1 norm, and the max absolute entry.
double neg_vector(const RVector& q);
double neg_matrix(const RMatrix& s);
double neg_obs(const RVector& w);
double neg_vector(const QuasiDistribution& q);
double neg_matrix(const QuasiStochasticMatrix& s);

// Reports max(0, v) when v is within the clamp of zero.
double clamp_negativity(double v);

struct L1Solution {
  NegStatus status = NegStatus::kOptimal;
  RVector p;     // minimal-l1 coefficients, e[p] = target
  double l1 = 0.0;
  RVector dual;  // y with |E^T y| <= 1 and y.b = l1
};

// Minimizes ||p||_1 subject to expansion * p = target.
L1Solution solve_min_l1(const RMatrix& expansion, const RVector& target,
                        const LpOptions& options = {});

NegativityResult min_neg_state(const SynthesisMap& e, const HermitianOperator& rho,
                               const LpOptions& options = {});
NegativityResult min_neg_channel(const SynthesisMap& e, const KrausChannel& phi,
                                 const LpOptions& options = {});
NegativityResult neg_measurement(const SynthesisMap& e, const Povm& f,
                                 MeasurementNorm norm = MeasurementNorm::kMaxEntry);

}  // namespace quasineg
