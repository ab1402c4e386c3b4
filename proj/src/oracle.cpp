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

#include "quasineg/oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "quasineg/error.hpp"

namespace quasineg {

double brute_force_oracle(const SynthesisMap& e, const HermitianOperator& rho) {
  if (e.dim() != 2) throw SizeCapError("brute_force_oracle: qubit frames only");
  if (e.size() > kOracleMaxFrameSize) {
    throw SizeCapError("brute_force_oracle: frame size " + std::to_string(e.size()) + " exceeds 12");
  }
  if (rho.dim() != 2) throw ValidationError("brute_force_oracle: state must be a qubit operator");
  const int big_d = 4;
  const int m = e.size();
  const RMatrix& a = e.expansion();
  RVector b(big_d);
  expand_into(rho.matrix(), b);

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(big_d);
  for (int i = 0; i < big_d; ++i) idx[static_cast<size_t>(i)] = i;
  if (m < big_d) throw InfeasibleError("brute_force_oracle: frame is not informationally complete");
  while (true) {
    RMatrix sub(big_d, big_d);
    for (int c = 0; c < big_d; ++c) sub.col(c) = a.col(idx[static_cast<size_t>(c)]);
    Eigen::FullPivLU<RMatrix> lu(sub);
    lu.setThreshold(1e-10);
    if (lu.isInvertible()) {
      const RVector p = lu.solve(b);
      if ((sub * p - b).norm() < 1e-9) best = std::min(best, p.lpNorm<1>());
    }
    // Advance to the next combination in lexicographic order.
    int k = big_d - 1;
    while (k >= 0 && idx[static_cast<size_t>(k)] == m - big_d + k) --k;
    if (k < 0) break;
    ++idx[static_cast<size_t>(k)];
    for (int j = k + 1; j < big_d; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  if (!std::isfinite(best)) throw InfeasibleError("brute_force_oracle: no feasible basic solution");
  return best;
}

}  // namespace quasineg
