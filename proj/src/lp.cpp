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

#include "quasineg/lp.hpp"

#include <cmath>
#include <limits>

#include "quasineg/error.hpp"

namespace quasineg {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPivotTol = 1e-11;
constexpr int kDegenerateLimit = 50;

class Simplex {
 public:
  Simplex(const RMatrix& a, const RVector& b, const LpOptions& opt)
      : m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())), opt_(opt) {
    t_ = Tableau::Zero(m_ + 1, n_ + m_ + 1);
    rhs_ = n_ + m_;
    basis_.resize(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      t_.row(i).head(n_) = a.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs_) = b(i);
      basis_[static_cast<size_t>(i)] = n_ + i;
    }
    active_.assign(static_cast<size_t>(m_), true);
  }

  // Runs pivots on the current objective row. Columns >= limit never enter.
  LpStatus run(int limit, int& iterations) {
    const int obj = m_;
    int degenerate_run = 0;
    while (true) {
      if (iterations >= opt_.max_iterations) return LpStatus::kIterationLimit;
      int enter = -1;
      double best = -opt_.optimality_tol;
      for (int j = 0; j < limit; ++j) {
        const double r = t_(obj, j);
        if (r < best) {
          enter = j;
          if (bland_) break;
          best = r;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (!active_[static_cast<size_t>(i)]) continue;
        const double aij = t_(i, enter);
        if (aij <= kPivotTol) continue;
        const double q = t_(i, rhs_) / aij;
        const double eps = 1e-12 * (1.0 + std::abs(q));
        if (leave < 0 || q < ratio - eps) {
          ratio = q;
          leave = i;
        } else if (q <= ratio + eps &&
                   basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)]) {
          ratio = std::min(ratio, q);
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      // Dantzig can cycle on degenerate vertices; fall back to Bland for good.
      degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;
      if (degenerate_run > kDegenerateLimit) bland_ = true;
      pivot(leave, enter);
      ++iterations;
    }
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[static_cast<size_t>(row)] = col;
  }

  Tableau& tableau() { return t_; }
  std::vector<int>& basis() { return basis_; }
  std::vector<bool>& active() { return active_; }
  int rhs() const { return rhs_; }

 private:
  int m_;
  int n_;
  int rhs_;
  LpOptions opt_;
  bool bland_ = opt_.rule == PivotRule::kBland;
  Tableau t_;
  std::vector<int> basis_;
  std::vector<bool> active_;
};

}  // namespace

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "?";
}

LpSolution lp_solve(const LpProblem& problem, const LpOptions& options) {
  const RMatrix& a_in = problem.equality_matrix;
  const int m = static_cast<int>(a_in.rows());
  const int n = static_cast<int>(a_in.cols());
  if (problem.objective.size() != n || problem.equality_rhs.size() != m) {
    throw ValidationError("lp_solve: inconsistent problem dimensions");
  }
  RMatrix a = a_in;
  RVector b = problem.equality_rhs;
  RVector sign = RVector::Ones(m);
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0) {
      a.row(i) *= -1.0;
      b(i) = -b(i);
      sign(i) = -1.0;
    }
  }

  LpSolution sol;
  Simplex sx(a, b, options);
  Tableau& t = sx.tableau();
  const int rhs = sx.rhs();

  // Phase 1: minimize the sum of artificials.
  t.row(m).setZero();
  for (int i = 0; i < m; ++i) {
    t.row(m).head(n) -= t.row(i).head(n);
    t(m, rhs) -= t(i, rhs);
  }
  LpStatus st = sx.run(n, sol.iterations);
  if (st == LpStatus::kIterationLimit) {
    sol.status = st;
    return sol;
  }
  const double scale = std::max(1.0, b.lpNorm<Eigen::Infinity>());
  if (-t(m, rhs) > options.feasibility_tol * scale * std::max(1, m)) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }

  // Pivot remaining artificials out; rows with no usable column are redundant.
  auto& basis = sx.basis();
  auto& active = sx.active();
  for (int i = 0; i < m; ++i) {
    if (basis[static_cast<size_t>(i)] < n) continue;
    int col = -1;
    double best = 1e-9;
    for (int j = 0; j < n; ++j) {
      if (std::abs(t(i, j)) > best) {
        best = std::abs(t(i, j));
        col = j;
      }
    }
    if (col >= 0) {
      sx.pivot(i, col);
    } else {
      active[static_cast<size_t>(i)] = false;
    }
  }

  // Phase 2.
  t.row(m).setZero();
  t.row(m).head(n) = problem.objective.transpose();
  for (int i = 0; i < m; ++i) {
    if (!active[static_cast<size_t>(i)]) continue;
    const double cb = problem.objective(basis[static_cast<size_t>(i)]);
    if (cb != 0.0) t.row(m) -= cb * t.row(i);
  }
  st = sx.run(n, sol.iterations);
  if (st != LpStatus::kOptimal) {
    sol.status = st;
    return sol;
  }

  // Recompute the vertex and the duals from the original data.
  std::vector<int> rows;
  std::vector<int> cols;
  for (int i = 0; i < m; ++i) {
    if (!active[static_cast<size_t>(i)]) continue;
    rows.push_back(i);
    cols.push_back(basis[static_cast<size_t>(i)]);
  }
  const int k = static_cast<int>(rows.size());
  RMatrix bm(k, k);
  RVector bb(k);
  RVector cb(k);
  for (int r = 0; r < k; ++r) {
    bb(r) = b(rows[static_cast<size_t>(r)]);
    cb(r) = problem.objective(cols[static_cast<size_t>(r)]);
    for (int c = 0; c < k; ++c) bm(r, c) = a(rows[static_cast<size_t>(r)], cols[static_cast<size_t>(c)]);
  }
  Eigen::FullPivLU<RMatrix> lu(bm);
  sol.x = RVector::Zero(n);
  sol.dual = RVector::Zero(m);
  if (k > 0 && lu.isInvertible()) {
    const RVector xb = lu.solve(bb);
    const RVector y = lu.transpose().solve(cb);
    for (int r = 0; r < k; ++r) {
      sol.x(cols[static_cast<size_t>(r)]) = std::max(0.0, xb(r));
      sol.dual(rows[static_cast<size_t>(r)]) = y(r) * sign(rows[static_cast<size_t>(r)]);
    }
  } else {
    for (int i = 0; i < m; ++i) {
      if (active[static_cast<size_t>(i)]) sol.x(basis[static_cast<size_t>(i)]) = std::max(0.0, t(i, rhs));
    }
  }
  sol.objective = problem.objective.dot(sol.x);
  sol.status = LpStatus::kOptimal;
  return sol;
}

}  // namespace quasineg
