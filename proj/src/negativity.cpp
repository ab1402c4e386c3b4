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

#include "quasineg/negativity.hpp"

#include <cmath>
#include <numbers>

#include "quasineg/error.hpp"
#include "quasineg/parallel.hpp"

namespace quasineg {

const char* neg_status_name(NegStatus s) {
  switch (s) {
    case NegStatus::kOptimal: return "optimal";
    case NegStatus::kInfeasible: return "infeasible";
    case NegStatus::kNumericalFailure: return "numerical-failure";
  }
  return "?";
}

MeasurementNorm parse_measurement_norm(std::string_view s) {
  if (s == "entry" || s == "max-entry") return MeasurementNorm::kMaxEntry;
  if (s == "column" || s == "column-l1") return MeasurementNorm::kColumnL1;
  throw ValidationError("unknown measurement norm '" + std::string(s) + "' (want entry or column)");
}

const char* measurement_norm_name(MeasurementNorm n) {
  return n == MeasurementNorm::kMaxEntry ? "entry" : "column";
}

double clamp_negativity(double v) {
  if (std::abs(v) < kNegativityClamp) return std::max(0.0, v);
  return v;
}

double neg_vector(const RVector& q) { return std::log2(q.lpNorm<1>()); }

double neg_matrix(const RMatrix& s) {
  return std::log2(s.cwiseAbs().colwise().sum().maxCoeff());
}

double neg_obs(const RVector& w) { return std::log2(w.lpNorm<Eigen::Infinity>()); }

double neg_vector(const QuasiDistribution& q) { return neg_vector(q.values()); }

double neg_matrix(const QuasiStochasticMatrix& s) { return neg_matrix(s.values()); }

L1Solution solve_min_l1(const RMatrix& expansion, const RVector& target, const LpOptions& options) {
  const Eigen::Index d = expansion.rows();
  const Eigen::Index m = expansion.cols();
  if (target.size() != d) throw ValidationError("solve_min_l1: target length mismatch");
  LpProblem lp;
  lp.objective = RVector::Ones(2 * m);
  lp.equality_matrix.resize(d, 2 * m);
  lp.equality_matrix.leftCols(m) = expansion;
  lp.equality_matrix.rightCols(m) = -expansion;
  lp.equality_rhs = target;
  const LpSolution s = lp_solve(lp, options);
  L1Solution out;
  if (s.status == LpStatus::kInfeasible) {
    out.status = NegStatus::kInfeasible;
    return out;
  }
  if (s.status != LpStatus::kOptimal) {
    out.status = NegStatus::kNumericalFailure;
    return out;
  }
  out.p = s.x.head(m) - s.x.tail(m);
  out.l1 = out.p.lpNorm<1>();
  out.dual = s.dual;
  const double residual = (expansion * out.p - target).norm();
  if (residual > kReconstructionTol * std::max(1.0, target.norm())) {
    out.status = NegStatus::kNumericalFailure;
  }
  return out;
}

namespace {

void fill_value(NegativityResult& r, double norm) {
  r.value_ln = std::log(norm);
  r.value_log2 = r.value_ln / std::numbers::ln2;
  r.value_log2 = clamp_negativity(r.value_log2);
  r.value_ln = clamp_negativity(r.value_ln);
}

}  // namespace

NegativityResult min_neg_state(const SynthesisMap& e, const HermitianOperator& rho,
                               const LpOptions& options) {
  NegativityResult r;
  if (rho.dim() != e.dim()) {
    r.status = NegStatus::kInfeasible;
    r.message = "state dimension does not match the frame";
    return r;
  }
  const double tr = rho.matrix().trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    throw ValidationError("min_neg_state: state trace is " + std::to_string(tr) + ", expected 1");
  }
  RVector b(static_cast<Eigen::Index>(e.dim()) * e.dim());
  expand_into(rho.matrix(), b);
  const L1Solution s = solve_min_l1(e.expansion(), b, options);
  r.status = s.status;
  if (s.status != NegStatus::kOptimal) {
    r.message = s.status == NegStatus::kInfeasible ? "state is outside the span of the frame"
                                                   : "LP did not converge";
    return r;
  }
  r.witness = s.p;
  fill_value(r, s.l1);
  return r;
}

NegativityResult min_neg_channel(const SynthesisMap& e, const KrausChannel& phi,
                                 const LpOptions& options) {
  NegativityResult r;
  if (phi.dim() != e.dim()) {
    r.status = NegStatus::kInfeasible;
    r.message = "channel dimension does not match the frame";
    return r;
  }
  const int m = e.size();
  std::vector<NegativityResult> cols(static_cast<size_t>(m));
  parallel_for(m, [&](int k) {
    cols[static_cast<size_t>(k)] = min_neg_state(e, apply_channel(phi, e.op(k)), options);
  });
  r.witness = RMatrix::Zero(m, m);
  double best = -1.0;
  for (int k = 0; k < m; ++k) {
    const auto& c = cols[static_cast<size_t>(k)];
    if (c.status != NegStatus::kOptimal) {
      r.status = c.status;
      r.worst_index = k;
      r.message = "column " + std::to_string(k) + ": " + c.message;
      return r;
    }
    r.witness.col(k) = c.witness;
    const double l1 = c.witness.lpNorm<1>();
    if (l1 > best) {
      best = l1;
      r.worst_index = k;
    }
  }
  fill_value(r, best);
  return r;
}

NegativityResult neg_measurement(const SynthesisMap& e, const Povm& f, MeasurementNorm norm) {
  NegativityResult r;
  r.witness = measurement_matrix(e, f).values();
  const RMatrix a = r.witness.cwiseAbs();
  double value = 0.0;
  if (norm == MeasurementNorm::kMaxEntry) {
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    value = a.maxCoeff(&row, &col);
    r.worst_index = static_cast<int>(col);
  } else {
    Eigen::Index col = 0;
    value = a.colwise().sum().maxCoeff(&col);
    r.worst_index = static_cast<int>(col);
  }
  fill_value(r, value);
  return r;
}

}  // namespace quasineg
