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

#include "quasineg/frames.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quasineg/error.hpp"

namespace quasineg {

namespace {

constexpr Complex kI{0.0, 1.0};

HermitianOperator bloch_op(double x, double y, double z) {
  CMatrix m(2, 2);
  m << 1.0 + z, Complex(x, -y), Complex(x, y), 1.0 - z;
  return HermitianOperator(m * 0.5);
}

bool is_odd_prime(int d) {
  if (d < 3 || d % 2 == 0) return false;
  for (int k = 3; k * k <= d; k += 2) {
    if (d % k == 0) return false;
  }
  return true;
}

Frame wigner_frame(int d) {
  if (!is_odd_prime(d)) {
    throw ValidationError("wigner frame requires an odd prime dimension, got " + std::to_string(d));
  }
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
  const int inv2 = (d + 1) / 2;  // 2 * inv2 = 1 mod d
  CMatrix shift = CMatrix::Zero(d, d);
  CMatrix clock = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    shift((k + 1) % d, k) = 1.0;
    clock(k, k) = std::pow(omega, k);
  }
  auto heisenberg_weyl = [&](int uz, int ux) {
    CMatrix t = CMatrix::Identity(d, d);
    for (int i = 0; i < uz; ++i) t = clock * t;
    CMatrix xs = CMatrix::Identity(d, d);
    for (int i = 0; i < ux; ++i) xs = shift * xs;
    const int exponent = ((d - (uz * ux) % d) * inv2) % d;
    return CMatrix(std::pow(omega, exponent) * t * xs);
  };
  CMatrix a0 = CMatrix::Zero(d, d);
  for (int uz = 0; uz < d; ++uz) {
    for (int ux = 0; ux < d; ++ux) a0 += heisenberg_weyl(uz, ux);
  }
  a0 /= static_cast<double>(d);
  std::vector<HermitianOperator> synth;
  std::vector<HermitianOperator> anal;
  for (int uz = 0; uz < d; ++uz) {
    for (int ux = 0; ux < d; ++ux) {
      const CMatrix t = heisenberg_weyl(uz, ux);
      HermitianOperator a(t * a0 * t.adjoint(), 1e-10);
      anal.emplace_back(a.matrix() / static_cast<double>(d));
      synth.push_back(std::move(a));
    }
  }
  return Frame{SynthesisMap(std::move(synth), "wigner" + std::to_string(d)),
               AnalysisMap(std::move(anal))};
}

}  // namespace

SynthesisMap::SynthesisMap(std::vector<HermitianOperator> ops, std::string label)
    : ops_(std::move(ops)), label_(std::move(label)) {
  if (ops_.empty()) throw ValidationError("SynthesisMap: no operators");
  dim_ = ops_.front().dim();
  if (dim_ < 2) throw ValidationError("SynthesisMap: dimension must be >= 2");
  expansion_.resize(static_cast<Eigen::Index>(dim_) * dim_, static_cast<Eigen::Index>(ops_.size()));
  for (size_t m = 0; m < ops_.size(); ++m) {
    if (ops_[m].dim() != dim_) {
      throw ValidationError("SynthesisMap: operator " + std::to_string(m) + " has the wrong dimension");
    }
    if (std::abs(ops_[m].trace() - 1.0) > kOperatorTol) {
      std::ostringstream os;
      os << "SynthesisMap: operator " << m << " has trace " << ops_[m].trace() << ", expected 1";
      throw ValidationError(os.str());
    }
    expand_into(ops_[m].matrix(), expansion_.col(static_cast<Eigen::Index>(m)));
  }
}

AnalysisMap::AnalysisMap(std::vector<HermitianOperator> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw ValidationError("AnalysisMap: no operators");
  dim_ = ops_.front().dim();
  CMatrix sum = CMatrix::Zero(dim_, dim_);
  for (const auto& op : ops_) {
    if (op.dim() != dim_) throw ValidationError("AnalysisMap: dimension mismatch");
    sum += op.matrix();
  }
  if ((sum - CMatrix::Identity(dim_, dim_)).norm() > kOperatorTol) {
    throw ValidationError("AnalysisMap: operators do not sum to the identity");
  }
}

QuasiDistribution::QuasiDistribution(RVector values, double tol) : values_(std::move(values)) {
  if (values_.size() == 0) throw ValidationError("QuasiDistribution: empty");
  if (std::abs(values_.sum() - 1.0) > tol) {
    std::ostringstream os;
    os << "QuasiDistribution: entries sum to " << values_.sum() << ", expected 1";
    throw ValidationError(os.str());
  }
}

QuasiStochasticMatrix::QuasiStochasticMatrix(RMatrix values, double tol) : values_(std::move(values)) {
  if (values_.size() == 0) throw ValidationError("QuasiStochasticMatrix: empty");
  for (Eigen::Index c = 0; c < values_.cols(); ++c) {
    const double s = values_.col(c).sum();
    if (std::abs(s - 1.0) > tol) {
      std::ostringstream os;
      os << "QuasiStochasticMatrix: column " << c << " sums to " << s << ", expected 1";
      throw ValidationError(os.str());
    }
  }
}

std::vector<std::string> catalog_frame_names() {
  return {"sic", "wootters", "stabilizer1q", "lambda_cube", "wigner"};
}

bool is_catalog_frame(std::string_view name) {
  for (const auto& n : catalog_frame_names()) {
    if (n == name) return true;
  }
  return false;
}

Frame catalog_frame(std::string_view name, std::optional<int> d) {
  if (name == "wigner") return wigner_frame(d.value_or(3));
  if (d && *d != 2) {
    throw ValidationError("frame '" + std::string(name) + "' is only defined for d = 2");
  }
  if (name == "wootters") {
    const std::array<std::array<double, 3>, 4> s{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
    std::vector<HermitianOperator> synth;
    std::vector<HermitianOperator> anal;
    for (const auto& v : s) {
      synth.push_back(bloch_op(v[0], v[1], v[2]));
      anal.push_back(synth.back() * 0.5);
    }
    return Frame{SynthesisMap(std::move(synth), "wootters"), AnalysisMap(std::move(anal))};
  }
  if (name == "sic") {
    const std::array<std::array<double, 3>, 4> s{{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {-1, -1, -1}}};
    const double r = std::sqrt(3.0);
    std::vector<HermitianOperator> synth;
    std::vector<HermitianOperator> anal;
    for (const auto& v : s) {
      synth.push_back(bloch_op(r * v[0], r * v[1], r * v[2]));
      anal.push_back(bloch_op(v[0] / r, v[1] / r, v[2] / r) * 0.5);
    }
    return Frame{SynthesisMap(std::move(synth), "sic"), AnalysisMap(std::move(anal))};
  }
  if (name == "stabilizer1q") {
    const std::array<std::array<double, 3>, 6> s{
        {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};
    std::vector<HermitianOperator> synth;
    for (const auto& v : s) synth.push_back(bloch_op(v[0], v[1], v[2]));
    return Frame{SynthesisMap(std::move(synth), "stabilizer1q"), std::nullopt};
  }
  if (name == "lambda_cube") {
    std::vector<HermitianOperator> synth;
    for (int k = 0; k < 8; ++k) {
      synth.push_back(bloch_op((k & 4) ? -1 : 1, (k & 2) ? -1 : 1, (k & 1) ? -1 : 1));
    }
    return Frame{SynthesisMap(std::move(synth), "lambda_cube"), std::nullopt};
  }
  throw ValidationError("unknown frame '" + std::string(name) + "'");
}

SynthesisMap product_frame(const std::vector<SynthesisMap>& parts) {
  if (parts.empty()) throw ValidationError("product_frame: empty list");
  if (parts.size() == 1) return parts.front();
  std::vector<CMatrix> ops;
  for (const auto& op : parts.front().ops()) ops.push_back(op.matrix());
  std::string label = parts.front().label();
  for (size_t k = 1; k < parts.size(); ++k) {
    std::vector<CMatrix> next;
    next.reserve(ops.size() * parts[k].ops().size());
    for (const auto& a : ops) {
      for (const auto& b : parts[k].ops()) next.push_back(kron(a, b.matrix()));
    }
    ops = std::move(next);
    label += "*" + parts[k].label();
  }
  std::vector<HermitianOperator> herm;
  herm.reserve(ops.size());
  for (const auto& m : ops) herm.emplace_back(m, 1e-10);
  return SynthesisMap(std::move(herm), label);
}

QuasiDistribution analyze(const AnalysisMap& e_big, const HermitianOperator& rho) {
  if (e_big.dim() != rho.dim()) throw ValidationError("analyze: dimension mismatch");
  RVector p(e_big.size());
  for (int m = 0; m < e_big.size(); ++m) {
    p(m) = (rho.matrix() * e_big.ops()[static_cast<size_t>(m)].matrix()).trace().real();
  }
  return QuasiDistribution(std::move(p));
}

HermitianOperator synthesize_raw(const SynthesisMap& e, const RVector& p) {
  if (p.size() != e.size()) throw ValidationError("synthesize: length mismatch");
  CMatrix out = CMatrix::Zero(e.dim(), e.dim());
  for (int m = 0; m < e.size(); ++m) out += p(m) * e.op(m).matrix();
  return HermitianOperator(out, 1e-10);
}

HermitianOperator synthesize(const SynthesisMap& e, const QuasiDistribution& p) {
  return synthesize_raw(e, p.values());
}

IcReport check_ic(const SynthesisMap& e) {
  Eigen::JacobiSVD<RMatrix> svd(e.expansion());
  const RVector& sv = svd.singularValues();
  IcReport r;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > kIcSingularTol) ++r.rank;
  }
  const Eigen::Index big_d = e.expansion().rows();
  r.smallest_singular_value = (sv.size() >= big_d) ? sv(big_d - 1) : 0.0;
  r.informationally_complete = (r.rank == big_d);
  return r;
}

QuasiStochasticMatrix mic_channel_matrix(const AnalysisMap& e_big, const SynthesisMap& e,
                                         const KrausChannel& phi) {
  if (e_big.dim() != e.dim() || e_big.size() != e.size() || phi.dim() != e.dim()) {
    throw ValidationError("mic_channel_matrix: dimension mismatch");
  }
  const int m = e.size();
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const double t = (e_big.ops()[static_cast<size_t>(k)].matrix() * e.op(l).matrix()).trace().real();
      if (std::abs(t - (k == l ? 1.0 : 0.0)) > kOperatorTol) {
        throw ValidationError("mic_channel_matrix: analysis and synthesis maps are not dual");
      }
    }
  }
  RMatrix s(m, m);
  for (int l = 0; l < m; ++l) {
    const HermitianOperator out = apply_channel(phi, e.op(l));
    for (int k = 0; k < m; ++k) {
      s(k, l) = (e_big.ops()[static_cast<size_t>(k)].matrix() * out.matrix()).trace().real();
    }
  }
  return QuasiStochasticMatrix(std::move(s));
}

QuasiStochasticMatrix measurement_matrix(const SynthesisMap& e, const Povm& f) {
  if (e.dim() != f.dim()) throw ValidationError("measurement_matrix: dimension mismatch");
  RMatrix v(f.size(), e.size());
  for (int k = 0; k < f.size(); ++k) {
    for (int l = 0; l < e.size(); ++l) {
      v(k, l) = (f.effects()[static_cast<size_t>(k)].matrix() * e.op(l).matrix()).trace().real();
    }
  }
  return QuasiStochasticMatrix(std::move(v));
}

}  // namespace quasineg
