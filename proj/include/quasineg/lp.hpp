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

#include "quasineg/operators.hpp"

namespace quasineg {

// Standard form: minimize c.x subject to A x = b, x >= 0.
struct LpProblem {
  RVector objective;
  RMatrix equality_matrix;
  RVector equality_rhs;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

enum class PivotRule { kBland, kDantzig };

struct LpOptions {
  PivotRule rule = PivotRule::kBland;
  int max_iterations = 50000;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-10;
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  RVector x;
  double objective = 0.0;
  // Equality-row multipliers y with A^T y <= c and b.y = objective at the
  // optimum.
  RVector dual;
  int iterations = 0;
};

const char* lp_status_name(LpStatus s);

// Two-phase dense tableau simplex. The final basic solution and the duals
// are recomputed from the original data with an LU solve.
LpSolution lp_solve(const LpProblem& problem, const LpOptions& options = {});

}  // namespace quasineg
