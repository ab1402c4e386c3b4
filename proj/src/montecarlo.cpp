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

#include "quasineg/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "quasineg/error.hpp"
#include "quasineg/negativity.hpp"
#include "quasineg/parallel.hpp"

namespace quasineg {

namespace {

constexpr long long kChunk = 1024;

std::vector<double> cumulative(const RVector& probs) {
  std::vector<double> cdf(static_cast<size_t>(probs.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    acc += probs(i);
    cdf[static_cast<size_t>(i)] = acc;
  }
  return cdf;
}

int draw(const std::vector<double>& cdf, double u) {
  const double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  int idx = static_cast<int>(it - cdf.begin());
  idx = std::min(idx, static_cast<int>(cdf.size()) - 1);
  // Skip zero-probability outcomes that upper_bound can land on at ties.
  while (idx > 0 && cdf[static_cast<size_t>(idx)] == cdf[static_cast<size_t>(idx - 1)]) --idx;
  return idx;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

void prepare_layer(PlanLayer& layer, const std::vector<int>& site_dims) {
  int local = 1;
  for (int s : layer.sites) {
    if (s < 0 || s >= static_cast<int>(site_dims.size())) {
      throw ValidationError("sampling plan: layer site out of range");
    }
    local *= site_dims[static_cast<size_t>(s)];
  }
  if (layer.s.rows() != local || layer.s.cols() != local) {
    throw ValidationError("sampling plan: layer matrix does not match its sites");
  }
  const RMatrix a = layer.s.cwiseAbs();
  layer.col_norms = a.colwise().sum().transpose();
  layer.s_st = a;
  layer.cdf.clear();
  for (int c = 0; c < local; ++c) {
    if (std::abs(layer.s.col(c).sum() - 1.0) > kDistributionTol) {
      throw ValidationError("sampling plan: layer column " + std::to_string(c) + " does not sum to 1");
    }
    layer.s_st.col(c) /= layer.col_norms(c);
    layer.cdf.push_back(cumulative(layer.s_st.col(c)));
  }
}

double pairwise_sum(std::vector<double> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    std::vector<double> next((v.size() + 1) / 2);
    for (size_t i = 0; i < next.size(); ++i) {
      next[i] = v[2 * i] + (2 * i + 1 < v.size() ? v[2 * i + 1] : 0.0);
    }
    v = std::move(next);
  }
  return v.front();
}

CMatrix embed(const CMatrix& k, const std::vector<int>& targets, int n) {
  const int full = 1 << n;
  CMatrix out = CMatrix::Zero(full, full);
  int target_mask = 0;
  for (int t : targets) target_mask |= 1 << (n - 1 - t);
  auto sub = [&](int idx) {
    int s = 0;
    for (int t : targets) s = (s << 1) | ((idx >> (n - 1 - t)) & 1);
    return s;
  };
  for (int r = 0; r < full; ++r) {
    for (int c = 0; c < full; ++c) {
      if ((r & ~target_mask) != (c & ~target_mask)) continue;
      out(r, c) = k(sub(r), sub(c));
    }
  }
  return out;
}

std::vector<int> measured_qubits(const CircuitDescription& c) {
  std::vector<int> q;
  for (int i = 0; i < static_cast<int>(c.measure.size()); ++i) {
    if (c.measure[static_cast<size_t>(i)]) q.push_back(i);
  }
  return q;
}

// Bit of the outcome index assigned to each qubit, or -1 if unmeasured.
std::vector<int> outcome_bits(const CircuitDescription& c, int outcome) {
  const auto q = measured_qubits(c);
  const int count = 1 << q.size();
  if (outcome < 0 || outcome >= count) {
    throw ValidationError("outcome index " + std::to_string(outcome) + " out of range");
  }
  std::vector<int> bits(static_cast<size_t>(c.n), -1);
  for (size_t i = 0; i < q.size(); ++i) {
    bits[static_cast<size_t>(q[i])] = (outcome >> (q.size() - 1 - i)) & 1;
  }
  return bits;
}

}  // namespace

SamplingPlan build_site_plan(std::vector<RVector> p, std::vector<PlanLayer> layers,
                             std::vector<RVector> v) {
  if (p.empty() || p.size() != v.size()) {
    throw ValidationError("sampling plan: need one distribution and one effect row per site");
  }
  SamplingPlan plan;
  for (size_t s = 0; s < p.size(); ++s) {
    if (p[s].size() == 0 || p[s].size() != v[s].size()) {
      throw ValidationError("sampling plan: site " + std::to_string(s) + " has inconsistent sizes");
    }
    if (std::abs(p[s].sum() - 1.0) > kDistributionTol) {
      throw ValidationError("sampling plan: site " + std::to_string(s) + " distribution does not sum to 1");
    }
    plan.site_dims.push_back(static_cast<int>(p[s].size()));
    const double norm = p[s].lpNorm<1>();
    plan.p_norm.push_back(norm);
    plan.p_st.push_back(p[s].cwiseAbs() / norm);
    plan.p_cdf.push_back(cumulative(plan.p_st.back()));
    plan.n_tot_ln += std::log(norm) + std::log(v[s].lpNorm<Eigen::Infinity>());
  }
  for (auto& layer : layers) {
    prepare_layer(layer, plan.site_dims);
    plan.n_tot_ln += std::log(layer.col_norms.maxCoeff());
  }
  plan.p = std::move(p);
  plan.layers = std::move(layers);
  plan.v = std::move(v);
  return plan;
}

SamplingPlan build_plan(const QuasiDistribution& p, const std::vector<QuasiStochasticMatrix>& layers,
                        const RVector& v) {
  std::vector<PlanLayer> ls;
  int dim = p.size();
  for (const auto& s : layers) {
    if (s.cols() != dim) throw ValidationError("build_plan: layer dimensions do not chain");
    if (s.rows() != s.cols()) {
      throw ValidationError("build_plan: layers must be square so states stay on one phase space");
    }
    PlanLayer l;
    l.sites = {0};
    l.s = s.values();
    ls.push_back(std::move(l));
    dim = s.rows();
  }
  if (v.size() != dim) throw ValidationError("build_plan: effect row length mismatch");
  return build_site_plan({p.values()}, std::move(ls), {v});
}

TrajectoryWeight trajectory_weight(const SamplingPlan& plan, const std::vector<int>& path) {
  if (plan.site_dims.size() != 1) throw ValidationError("trajectory_weight: single-site plans only");
  if (path.size() != plan.layers.size() + 1) throw ValidationError("trajectory_weight: path length");
  TrajectoryWeight w;
  const int x0 = path[0];
  w.probability = plan.p_st[0](x0);
  double sign = sgn(plan.p[0](x0));
  double mag = plan.p_norm[0];
  for (size_t l = 0; l < plan.layers.size(); ++l) {
    const auto& layer = plan.layers[l];
    const int from = path[l];
    const int to = path[l + 1];
    w.probability *= layer.s_st(to, from);
    sign *= sgn(layer.s(to, from));
    mag *= layer.col_norms(from);
  }
  const double vx = plan.v[0](path.back());
  w.chi = sign * mag * vx;
  return w;
}

double plan_exact_value(const SamplingPlan& plan) {
  const size_t sites = plan.site_dims.size();
  if (sites == 1) {
    RVector x = plan.p[0];
    for (const auto& layer : plan.layers) x = layer.s * x;
    return plan.v[0].dot(x);
  }
  // Dense joint vector, site 0 most significant.
  std::vector<long long> stride(sites, 1);
  long long total = 1;
  for (size_t s = sites; s-- > 0;) {
    stride[s] = total;
    total *= plan.site_dims[s];
    if (total > (1LL << 22)) throw SizeCapError("plan_exact_value: joint dimension exceeds 2^22");
  }
  auto digit = [&](long long idx, size_t s) { return static_cast<int>((idx / stride[s]) % plan.site_dims[s]); };
  RVector x(total);
  for (long long i = 0; i < total; ++i) {
    double w = 1.0;
    for (size_t s = 0; s < sites; ++s) w *= plan.p[s](digit(i, s));
    x(i) = w;
  }
  for (const auto& layer : plan.layers) {
    RVector y = RVector::Zero(total);
    const auto a = static_cast<size_t>(layer.sites[0]);
    if (layer.sites.size() == 1) {
      for (long long i = 0; i < total; ++i) {
        if (x(i) == 0.0) continue;
        const int col = digit(i, a);
        const long long base = i - col * stride[a];
        for (int row = 0; row < layer.s.rows(); ++row) y(base + row * stride[a]) += layer.s(row, col) * x(i);
      }
    } else {
      const auto b = static_cast<size_t>(layer.sites[1]);
      const int mb = plan.site_dims[b];
      for (long long i = 0; i < total; ++i) {
        if (x(i) == 0.0) continue;
        const int xa = digit(i, a), xb = digit(i, b);
        const long long base = i - xa * stride[a] - xb * stride[b];
        const int col = xa * mb + xb;
        for (int row = 0; row < layer.s.rows(); ++row) {
          y(base + (row / mb) * stride[a] + (row % mb) * stride[b]) += layer.s(row, col) * x(i);
        }
      }
    }
    x = std::move(y);
  }
  double q = 0.0;
  for (long long i = 0; i < total; ++i) {
    double w = 1.0;
    for (size_t s = 0; s < sites; ++s) w *= plan.v[s](digit(i, s));
    q += w * x(i);
  }
  return q;
}

EstimateReport estimate(const SamplingPlan& plan, long long n, std::uint64_t seed, double delta) {
  if (n < 1) throw ValidationError("estimate: need at least one sample");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("estimate: delta must lie in (0, 1)");
  const size_t sites = plan.site_dims.size();
  const long long chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> sums(static_cast<size_t>(chunks), 0.0);
  std::vector<double> maxes(static_cast<size_t>(chunks), 0.0);
  parallel_for(static_cast<int>(chunks), [&](int ci) {
    const long long begin = ci * kChunk;
    const long long end = std::min(n, begin + kChunk);
    std::vector<int> x(sites);
    double acc = 0.0;
    double mx = 0.0;
    for (long long t = begin; t < end; ++t) {
      std::mt19937_64 rng(stream_seed(seed, static_cast<std::uint64_t>(t)));
      double chi = 1.0;
      for (size_t s = 0; s < sites; ++s) {
        x[s] = draw(plan.p_cdf[s], uniform01(rng));
        chi *= sgn(plan.p[s](x[s])) * plan.p_norm[s];
      }
      for (const auto& layer : plan.layers) {
        int col = 0;
        int stride = 1;
        if (layer.sites.size() == 1) {
          col = x[static_cast<size_t>(layer.sites[0])];
        } else {
          stride = plan.site_dims[static_cast<size_t>(layer.sites[1])];
          col = x[static_cast<size_t>(layer.sites[0])] * stride + x[static_cast<size_t>(layer.sites[1])];
        }
        const int row = draw(layer.cdf[static_cast<size_t>(col)], uniform01(rng));
        chi *= sgn(layer.s(row, col)) * layer.col_norms(col);
        if (layer.sites.size() == 1) {
          x[static_cast<size_t>(layer.sites[0])] = row;
        } else {
          x[static_cast<size_t>(layer.sites[0])] = row / stride;
          x[static_cast<size_t>(layer.sites[1])] = row % stride;
        }
      }
      for (size_t s = 0; s < sites; ++s) chi *= plan.v[s](x[s]);
      acc += chi;
      mx = std::max(mx, std::abs(chi));
    }
    sums[static_cast<size_t>(ci)] = acc;
    maxes[static_cast<size_t>(ci)] = mx;
  });
  EstimateReport r;
  r.n_samples = n;
  r.q_est = pairwise_sum(std::move(sums)) / static_cast<double>(n);
  r.n_tot_ln = plan.n_tot_ln;
  r.n_tot_log2 = plan.n_tot_ln / std::numbers::ln2;
  r.hoeffding_bound = std::exp(plan.n_tot_ln) * std::sqrt(2.0 * std::log(2.0 / delta) / static_cast<double>(n));
  r.max_abs_chi = *std::max_element(maxes.begin(), maxes.end());
  return r;
}

long long hoeffding_samples(double n_tot_ln, double eps, double delta) {
  if (!(eps > 0.0)) throw ValidationError("hoeffding_samples: eps must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("hoeffding_samples: delta must lie in (0, 1)");
  const double bound = std::exp(2.0 * n_tot_ln) * (2.0 / (eps * eps)) * std::log(2.0 / delta);
  // Guard against ceil() of a value that is an integer up to rounding.
  return static_cast<long long>(std::ceil(bound * (1.0 - 1e-12)));
}

int measured_outcome_count(const CircuitDescription& c) { return 1 << measured_qubits(c).size(); }

SamplingPlan build_circuit_plan(const CircuitDescription& c, const SynthesisMap& e1, int outcome,
                                const LpOptions& lp) {
  validate_circuit(c);
  if (e1.dim() != 2) throw ValidationError("circuit plans need a qubit frame");
  const auto bits = outcome_bits(c, outcome);
  std::vector<RVector> p;
  for (const auto& s : c.initial) {
    const auto r = min_neg_state(e1, named_state(s), lp);
    if (r.status != NegStatus::kOptimal) throw InfeasibleError("initial state " + s + ": " + r.message);
    p.push_back(r.witness.col(0));
  }
  std::optional<SynthesisMap> e2;
  std::vector<PlanLayer> layers;
  for (size_t g = 0; g < c.gates.size(); ++g) {
    const auto& op = c.gates[g];
    const CircuitElement el = gate_element(op.id, op.theta, c.noise);
    if (el.arity == 2 && !e2) e2 = product_frame({e1, e1});
    const auto r = min_neg_channel(el.arity == 1 ? e1 : *e2, el.channel, lp);
    if (r.status == NegStatus::kInfeasible) {
      throw InfeasibleError("gates[" + std::to_string(g) + "] " + el.label + ": " + r.message);
    }
    if (r.status != NegStatus::kOptimal) {
      throw NumericalError("gates[" + std::to_string(g) + "] " + el.label + ": " + r.message);
    }
    PlanLayer layer;
    layer.sites = op.targets;
    layer.s = r.witness;
    layers.push_back(std::move(layer));
  }
  const RMatrix vz = measurement_matrix(e1, Povm::computational(2)).values();
  std::vector<RVector> v;
  for (int q = 0; q < c.n; ++q) {
    const int b = bits[static_cast<size_t>(q)];
    v.push_back(b < 0 ? RVector(RVector::Ones(e1.size())) : RVector(vz.row(b).transpose()));
  }
  return build_site_plan(std::move(p), std::move(layers), std::move(v));
}

double exact_probability(const CircuitDescription& c, int outcome) {
  validate_circuit(c);
  if (c.n > kExactMaxQubits) {
    throw SizeCapError("exact_probability: at most " + std::to_string(kExactMaxQubits) + " qubits");
  }
  const auto bits = outcome_bits(c, outcome);
  CMatrix rho = CMatrix::Identity(1, 1);
  for (const auto& s : c.initial) rho = kron(rho, named_state(s).matrix());
  for (const auto& op : c.gates) {
    const CircuitElement el = gate_element(op.id, op.theta, c.noise);
    CMatrix next = CMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& k : el.channel.kraus()) {
      const CMatrix big = embed(k, op.targets, c.n);
      next += big * rho * big.adjoint();
    }
    rho = next;
  }
  CMatrix effect = CMatrix::Identity(1, 1);
  for (int q = 0; q < c.n; ++q) {
    CMatrix f = CMatrix::Identity(2, 2);
    const int b = bits[static_cast<size_t>(q)];
    if (b >= 0) {
      f.setZero();
      f(b, b) = 1.0;
    }
    effect = kron(effect, f);
  }
  return (effect * rho).trace().real();
}

}  // namespace quasineg
