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
#include <string>
#include <vector>

#include "quasineg/circuit.hpp"
#include "quasineg/frames.hpp"

namespace quasineg {

inline constexpr double kPenaltyBase = 1e3;
inline constexpr double kObjectiveIcTol = 1e-6;

// theta holds (d^2 - 1) coordinates per operator, operator-major. For d = 2
// these are Bloch vectors.
struct FrameParams {
  int d = 2;
  int m = 0;
  RVector theta;
};

SynthesisMap frame_from_params(const FrameParams& params, std::string label = "params");
FrameParams params_from_frame(const SynthesisMap& e);

// Appends copies of the leading operators until the frame has m operators.
// Duplicated columns leave every negativity unchanged.
SynthesisMap pad_frame(const SynthesisMap& e, int m);

enum class GradientMode { kAnalytic, kFiniteDifference };

struct ObjectiveOptions {
  LedgerOptions ledger;
  // Log-sum-exp smoothing of the max over channel columns, in bits. 0 = off.
  double softmax_temperature = 0.0;
};

struct ObjectiveValue {
  double value = 0.0;
  bool penalized = false;
  RVector gradient;  // empty unless requested
};

double objective(const FrameParams& params, const CircuitLedger& ledger,
                 const ObjectiveOptions& options = {});
// The analytic gradient follows from LP duality: for ||p*||_1 with dual y,
// d||p*||_1 = y.(d target) - y.(d E) p*. At ties the first maximizing
// column is used.
ObjectiveValue objective_with_gradient(const FrameParams& params, const CircuitLedger& ledger,
                                       const ObjectiveOptions& options = {});

struct OptimizerConfig {
  // The objective LPs default to Dantzig pricing; see LpOptions.
  OptimizerConfig() { objective.ledger.lp.rule = PivotRule::kDantzig; }

  int restarts = 30;
  std::uint64_t seed = 0;
  int max_iters = 200;
  double step_tol = 1e-6;
  double improvement_tol = 1e-7;
  double param_box = 3.0;
  GradientMode gradient = GradientMode::kAnalytic;
  double fd_step = 1e-4;
  bool catalog_warm_starts = true;
  // Additional warm starts, padded to M when smaller. Larger frames are skipped.
  std::vector<SynthesisMap> warm_frames;
  ObjectiveOptions objective;
};

struct RestartRecord {
  int index = 0;
  std::string start;  // "warm:<label>" or "random"
  double start_value = 0.0;
  double final_value = 0.0;
  int iterations = 0;
  bool failed = false;
  std::string message;
};

struct OptimizeResult {
  SynthesisMap best_frame;
  double best_value = 0.0;
  int best_index = -1;
  std::vector<RestartRecord> trace;
};

OptimizeResult optimize(const CircuitLedger& ledger, int m, const OptimizerConfig& cfg);

}  // namespace quasineg
