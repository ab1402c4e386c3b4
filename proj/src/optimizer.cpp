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

#include "quasineg/optimizer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "quasineg/error.hpp"
#include "quasineg/parallel.hpp"

namespace quasineg {

namespace {

int params_per_op(int d) { return d * d - 1; }

// Derivative of a frame operator with respect to one coordinate is B_j/sqrt(d).
class Evaluator {
 public:
  Evaluator(const CircuitLedger& ledger, const ObjectiveOptions& options)
      : ledger_(ledger), options_(options) {}

  ObjectiveValue run(const FrameParams& params, bool want_gradient) {
    ObjectiveValue out;
    d_ = params.d;
    m_ = params.m;
    k_ = params_per_op(d_);
    if (want_gradient) out.gradient = RVector::Zero(params.theta.size());
    e1_ = frame_from_params(params);
    const IcReport ic = check_ic(e1_);
    if (ic.smallest_singular_value < kObjectiveIcTol) {
      out.value = kPenaltyBase + 1e9 * (kObjectiveIcTol - ic.smallest_singular_value);
      out.penalized = true;
      return out;
    }
    bool needs_pair = false;
    for (const auto& entry : ledger_.entries()) needs_pair = needs_pair || entry.element.arity == 2;
    if (needs_pair) e2_ = product_frame({e1_, e1_});
    grad_ = want_gradient ? &out.gradient : nullptr;
    try {
      for (const auto& entry : ledger_.entries()) {
        out.value += entry.multiplicity * element(entry.element, entry.multiplicity);
      }
    } catch (const NumericalError&) {
      out.value = kPenaltyBase;
      out.penalized = true;
      if (want_gradient) out.gradient.setZero();
    }
    return out;
  }

 private:
  const SynthesisMap& frame(int arity) const { return arity == 1 ? e1_ : e2_; }

  // g += coef * d/dtheta Tr(X F_i) for frame operator i at the given arity.
  void accumulate(const CMatrix& x, int i, int arity, double coef) {
    if (!grad_ || coef == 0.0) return;
    RVector c(d_ * d_);
    const double inv = 1.0 / std::sqrt(static_cast<double>(d_));
    auto add = [&](const CMatrix& reduced, int op) {
      expand_into(reduced, c);
      for (int j = 1; j < d_ * d_; ++j) (*grad_)(op * k_ + j - 1) += coef * c(j) * inv;
    };
    if (arity == 1) {
      add(x, i);
      return;
    }
    const int a = i / m_;
    const int b = i % m_;
    const CMatrix& ea = e1_.op(a).matrix();
    const CMatrix& eb = e1_.op(b).matrix();
    // Tr(X (G (x) e_b)) = Tr(Tr_2[X (1 (x) e_b)] G), likewise for the second slot.
    const CMatrix eye = CMatrix::Identity(d_, d_);
    const CMatrix w1 = x * kron(eye, eb);
    const CMatrix w2 = x * kron(ea, eye);
    CMatrix r1 = CMatrix::Zero(d_, d_);
    CMatrix r2 = CMatrix::Zero(d_, d_);
    for (int p = 0; p < d_; ++p) {
      for (int q = 0; q < d_; ++q) {
        for (int s = 0; s < d_; ++s) {
          r1(p, q) += w1(p * d_ + s, q * d_ + s);
          r2(p, q) += w2(s * d_ + p, s * d_ + q);
        }
      }
    }
    add(r1, a);
    add(r2, b);
  }

  CMatrix dual_operator(const RVector& y, int dim) const {
    const auto& basis = hermitian_basis(dim);
    CMatrix out = CMatrix::Zero(dim, dim);
    for (int j = 0; j < dim * dim; ++j) out += y(j) * basis[static_cast<size_t>(j)].matrix();
    return out;
  }

  L1Solution solve(const SynthesisMap& e, const CMatrix& target) const {
    RVector b(static_cast<Eigen::Index>(e.dim()) * e.dim());
    expand_into(target, b);
    L1Solution s = solve_min_l1(e.expansion(), b, options_.ledger.lp);
    if (s.status != NegStatus::kOptimal) throw NumericalError("LP failed during objective");
    return s;
  }

  // d log2(l1) pieces for one LP solved against frame e; target derivative
  // handled by the caller.
  void lp_gradient(const L1Solution& s, int arity, double coef) {
    const int dim = frame(arity).dim();
    const CMatrix y = dual_operator(s.dual, dim);
    for (Eigen::Index i = 0; i < s.p.size(); ++i) {
      if (s.p(i) != 0.0) accumulate(y, static_cast<int>(i), arity, -coef * s.p(i));
    }
  }

  double element(const CircuitElement& el, int multiplicity) {
    const SynthesisMap& e = frame(el.arity);
    const double ln2 = std::numbers::ln2;
    switch (el.kind) {
      case ElementKind::kState: {
        const L1Solution s = solve(e, el.state.matrix());
        if (grad_) lp_gradient(s, el.arity, multiplicity / (s.l1 * ln2));
        return clamp_negativity(std::log2(s.l1));
      }
      case ElementKind::kChannel: {
        const int cols = e.size();
        std::vector<L1Solution> sol(static_cast<size_t>(cols));
        std::vector<CMatrix> images(static_cast<size_t>(cols));
        RVector vals(cols);
        for (int k = 0; k < cols; ++k) {
          images[static_cast<size_t>(k)] = apply_channel(el.channel, e.op(k)).matrix();
          sol[static_cast<size_t>(k)] = solve(e, images[static_cast<size_t>(k)]);
          vals(k) = std::log2(sol[static_cast<size_t>(k)].l1);
        }
        RVector weight = RVector::Zero(cols);
        double value = 0.0;
        const double temp = options_.softmax_temperature;
        if (temp > 0.0) {
          const double top = vals.maxCoeff();
          double z = 0.0;
          for (int k = 0; k < cols; ++k) z += std::exp2((vals(k) - top) / temp);
          value = top + temp * std::log2(z);
          for (int k = 0; k < cols; ++k) weight(k) = std::exp2((vals(k) - top) / temp) / z;
        } else {
          Eigen::Index worst = 0;
          value = vals.maxCoeff(&worst);
          weight(worst) = 1.0;
        }
        if (grad_) {
          for (int k = 0; k < cols; ++k) {
            if (weight(k) == 0.0) continue;
            const L1Solution& s = sol[static_cast<size_t>(k)];
            const double coef = multiplicity * weight(k) / (s.l1 * ln2);
            const CMatrix y = dual_operator(s.dual, e.dim());
            const CMatrix z = apply_adjoint(el.channel, HermitianOperator(y, 1e-8)).matrix();
            accumulate(z, k, el.arity, coef);
            lp_gradient(s, el.arity, coef);
          }
        }
        return clamp_negativity(value);
      }
      case ElementKind::kPovm: {
        const RMatrix v = measurement_matrix(e, el.povm).values();
        Eigen::Index row = 0;
        Eigen::Index col = 0;
        double value = 0.0;
        if (options_.ledger.measurement_norm == MeasurementNorm::kMaxEntry) {
          value = v.cwiseAbs().maxCoeff(&row, &col);
          if (grad_) {
            const double sgn = v(row, col) >= 0 ? 1.0 : -1.0;
            accumulate(el.povm.effects()[static_cast<size_t>(row)].matrix(), static_cast<int>(col),
                       el.arity, multiplicity * sgn / (value * ln2));
          }
        } else {
          value = v.cwiseAbs().colwise().sum().maxCoeff(&col);
          if (grad_) {
            for (Eigen::Index k = 0; k < v.rows(); ++k) {
              const double sgn = v(k, col) >= 0 ? 1.0 : -1.0;
              accumulate(el.povm.effects()[static_cast<size_t>(k)].matrix(), static_cast<int>(col),
                         el.arity, multiplicity * sgn / (value * ln2));
            }
          }
        }
        return clamp_negativity(std::log2(value));
      }
    }
    return 0.0;
  }

  const CircuitLedger& ledger_;
  ObjectiveOptions options_;
  int d_ = 2;
  int m_ = 0;
  int k_ = 3;
  SynthesisMap e1_;
  SynthesisMap e2_;
  RVector* grad_ = nullptr;
};

RVector clamp_box(RVector x, double box) { return x.cwiseMax(-box).cwiseMin(box); }

struct LocalResult {
  RVector x;
  double value = 0.0;
  int iterations = 0;
};

class LocalSolver {
 public:
  LocalSolver(const CircuitLedger& ledger, const OptimizerConfig& cfg, int d, int m)
      : ledger_(ledger), cfg_(cfg), d_(d), m_(m) {}

  ObjectiveValue eval(const RVector& x) {
    FrameParams p{d_, m_, x};
    if (cfg_.gradient == GradientMode::kAnalytic) {
      return objective_with_gradient(p, ledger_, cfg_.objective);
    }
    ObjectiveValue out;
    out.value = objective(p, ledger_, cfg_.objective);
    out.penalized = out.value >= kPenaltyBase;
    out.gradient = RVector::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      RVector xp = x;
      RVector xm = x;
      xp(i) += cfg_.fd_step;
      xm(i) -= cfg_.fd_step;
      p.theta = xp;
      const double fp = objective(p, ledger_, cfg_.objective);
      p.theta = xm;
      const double fm = objective(p, ledger_, cfg_.objective);
      out.gradient(i) = (fp - fm) / (2.0 * cfg_.fd_step);
    }
    return out;
  }

  // Projected quasi-Newton descent with BFGS updates and Armijo backtracking.
  LocalResult run(RVector x) {
    const Eigen::Index n = x.size();
    x = clamp_box(std::move(x), cfg_.param_box);
    ObjectiveValue cur = eval(x);
    LocalResult res{x, cur.value, 0};
    if (cur.penalized) return res;
    RMatrix h = RMatrix::Identity(n, n);
    bool fresh = true;
    for (int it = 0; it < cfg_.max_iters; ++it) {
      res.iterations = it + 1;
      RVector dir = -h * cur.gradient;
      if (cur.gradient.dot(dir) >= 0.0) {
        h.setIdentity();
        fresh = true;
        dir = -cur.gradient;
      }
      double alpha = 1.0;
      bool accepted = false;
      RVector xn;
      ObjectiveValue next;
      while (alpha > 1e-10) {
        xn = clamp_box(x + alpha * dir, cfg_.param_box);
        const RVector s = xn - x;
        if (s.norm() < 1e-14) break;
        next = eval(xn);
        if (!next.penalized && next.value < cur.value &&
            next.value <= cur.value + 1e-4 * std::min(0.0, cur.gradient.dot(s))) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        if (fresh) break;
        h.setIdentity();
        fresh = true;
        continue;
      }
      const RVector s = xn - x;
      const RVector yv = next.gradient - cur.gradient;
      const double improvement = cur.value - next.value;
      const double sy = s.dot(yv);
      if (sy > 1e-12) {
        const double rho = 1.0 / sy;
        const RMatrix eye = RMatrix::Identity(n, n);
        h = (eye - rho * s * yv.transpose()) * h * (eye - rho * yv * s.transpose()) +
            rho * s * s.transpose();
        fresh = false;
      }
      x = xn;
      cur = next;
      res.x = x;
      res.value = cur.value;
      if (s.norm() < cfg_.step_tol || improvement < cfg_.improvement_tol) break;
    }
    return res;
  }

 private:
  const CircuitLedger& ledger_;
  const OptimizerConfig& cfg_;
  int d_;
  int m_;
};

RVector random_start(int d, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int k = params_per_op(d);
  RVector x(k * m);
  const double radius = std::sqrt(3.0);
  for (int op = 0; op < m; ++op) {
    RVector g(k);
    for (int j = 0; j < k; ++j) g(j) = normal(rng);
    const double r = radius * std::pow(unif(rng), 1.0 / k);
    x.segment(op * k, k) = g.normalized() * r;
  }
  return x;
}

}  // namespace

SynthesisMap frame_from_params(const FrameParams& params, std::string label) {
  const int d = params.d;
  const int k = params_per_op(d);
  if (params.m < 1 || params.theta.size() != static_cast<Eigen::Index>(k) * params.m) {
    throw ValidationError("frame_from_params: theta must have (d^2-1)*M entries");
  }
  const auto& basis = hermitian_basis(d);
  const double sd = std::sqrt(static_cast<double>(d));
  std::vector<HermitianOperator> ops;
  ops.reserve(static_cast<size_t>(params.m));
  for (int m = 0; m < params.m; ++m) {
    CMatrix op = CMatrix::Identity(d, d);
    for (int j = 1; j <= k; ++j) op += params.theta(m * k + j - 1) * sd * basis[static_cast<size_t>(j)].matrix();
    ops.emplace_back(op / static_cast<double>(d));
  }
  return SynthesisMap(std::move(ops), std::move(label));
}

FrameParams params_from_frame(const SynthesisMap& e) {
  FrameParams p;
  p.d = e.dim();
  p.m = e.size();
  const int k = params_per_op(p.d);
  p.theta.resize(static_cast<Eigen::Index>(k) * p.m);
  const double sd = std::sqrt(static_cast<double>(p.d));
  for (int m = 0; m < p.m; ++m) {
    for (int j = 1; j <= k; ++j) p.theta(m * k + j - 1) = sd * e.expansion()(j, m);
  }
  return p;
}

SynthesisMap pad_frame(const SynthesisMap& e, int m) {
  if (m < e.size()) throw ValidationError("pad_frame: target size is smaller than the frame");
  std::vector<HermitianOperator> ops = e.ops();
  for (int k = e.size(); k < m; ++k) ops.push_back(e.op((k - e.size()) % e.size()));
  return SynthesisMap(std::move(ops), e.label() + (m > e.size() ? "+pad" : ""));
}

double objective(const FrameParams& params, const CircuitLedger& ledger,
                 const ObjectiveOptions& options) {
  Evaluator ev(ledger, options);
  return ev.run(params, false).value;
}

ObjectiveValue objective_with_gradient(const FrameParams& params, const CircuitLedger& ledger,
                                       const ObjectiveOptions& options) {
  Evaluator ev(ledger, options);
  return ev.run(params, true);
}

OptimizeResult optimize(const CircuitLedger& ledger, int m, const OptimizerConfig& cfg) {
  const int d = ledger.d();
  if (m < d * d) throw ValidationError("optimize: M must be at least d^2");
  if (cfg.restarts < 1) throw ValidationError("optimize: restarts must be >= 1");

  struct Start {
    std::string label;
    RVector x;
  };
  std::vector<Start> starts;
  auto add_warm = [&](const SynthesisMap& f) {
    if (f.dim() != d || f.size() > m) return;
    starts.push_back({"warm:" + f.label(), params_from_frame(pad_frame(f, m)).theta});
  };
  if (cfg.catalog_warm_starts && d == 2) {
    for (const char* name : {"wootters", "sic", "stabilizer1q", "lambda_cube"}) {
      add_warm(catalog_frame(name).synthesis);
    }
  }
  for (const auto& f : cfg.warm_frames) add_warm(f);
  const int warm = static_cast<int>(starts.size());
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto index = static_cast<std::uint64_t>(warm + r);
    starts.push_back({"random", random_start(d, m, cfg.seed ^ index)});
  }

  // The objective runs with smoothing if requested; reported values never are.
  ObjectiveOptions plain = cfg.objective;
  plain.softmax_temperature = 0.0;

  std::vector<RestartRecord> trace(starts.size());
  std::vector<RVector> finals(starts.size());
  parallel_for(static_cast<int>(starts.size()), [&](int i) {
    const Start& st = starts[static_cast<size_t>(i)];
    RestartRecord rec;
    rec.index = i;
    rec.start = st.label;
    try {
      rec.start_value = objective(FrameParams{d, m, clamp_box(st.x, cfg.param_box)}, ledger, plain);
      LocalSolver solver(ledger, cfg, d, m);
      LocalResult lr = solver.run(st.x);
      rec.iterations = lr.iterations;
      rec.final_value = objective(FrameParams{d, m, lr.x}, ledger, plain);
      // Smoothing can drift uphill in the true objective; keep the start then.
      if (rec.final_value > rec.start_value) {
        lr.x = clamp_box(st.x, cfg.param_box);
        rec.final_value = rec.start_value;
      }
      rec.failed = rec.final_value >= kPenaltyBase;
      if (rec.failed) rec.message = "frame not informationally complete";
      finals[static_cast<size_t>(i)] = lr.x;
    } catch (const std::exception& ex) {
      rec.failed = true;
      rec.final_value = std::numeric_limits<double>::infinity();
      rec.message = ex.what();
    }
    trace[static_cast<size_t>(i)] = rec;
  });

  OptimizeResult out;
  out.best_value = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < trace.size(); ++i) {
    if (trace[i].failed) continue;
    if (trace[i].final_value < out.best_value) {
      out.best_value = trace[i].final_value;
      out.best_index = static_cast<int>(i);
    }
  }
  out.trace = std::move(trace);
  if (out.best_index < 0) throw NumericalError("optimize: every restart failed");
  out.best_frame = frame_from_params(FrameParams{d, m, finals[static_cast<size_t>(out.best_index)]},
                                     "optimized_M" + std::to_string(m));
  return out;
}

}  // namespace quasineg
