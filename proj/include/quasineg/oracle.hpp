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

#include "quasineg/frames.hpp"

namespace quasineg {

inline constexpr int kOracleMaxFrameSize = 12;

// Minimal ||p||_1 over e[p] = rho by enumerating every D-subset of frame
// columns, solving the square system, and keeping the best feasible point.
// Qubit frames with M <= 12 only; throws SizeCapError otherwise.
double brute_force_oracle(const SynthesisMap& e, const HermitianOperator& rho);

}  // namespace quasineg
