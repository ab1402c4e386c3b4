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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quasineg/operators.hpp"

namespace quasineg {

inline constexpr double kDistributionTol = 1e-9;
inline constexpr double kIcSingularTol = 1e-8;

// Ordered list of trace-one Hermitian operators. The D x M matrix of basis
// expansions is computed once at construction.
class SynthesisMap {
 public:
  SynthesisMap() = default;
  explicit SynthesisMap(std::vector<HermitianOperator> ops, std::string label = "");

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(ops_.size()); }
  const std::vector<HermitianOperator>& ops() const { return ops_; }
  const HermitianOperator& op(int m) const { return ops_[static_cast<size_t>(m)]; }
  const std::string& label() const { return label_; }
  // Column m holds expand(ops[m]).
  const RMatrix& expansion() const { return expansion_; }

 private:
  int dim_ = 0;
  std::vector<HermitianOperator> ops_;
  std::string label_;
  RMatrix expansion_;
};

class AnalysisMap {
 public:
  AnalysisMap() = default;
  explicit AnalysisMap(std::vector<HermitianOperator> ops);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(ops_.size()); }
  const std::vector<HermitianOperator>& ops() const { return ops_; }

 private:
  int dim_ = 0;
  std::vector<HermitianOperator> ops_;
};

class QuasiDistribution {
 public:
  QuasiDistribution() = default;
  explicit QuasiDistribution(RVector values, double tol = kDistributionTol);

  int size() const { return static_cast<int>(values_.size()); }
  const RVector& values() const { return values_; }
  double operator[](int m) const { return values_(m); }

 private:
  RVector values_;
};

class QuasiStochasticMatrix {
 public:
  QuasiStochasticMatrix() = default;
  explicit QuasiStochasticMatrix(RMatrix values, double tol = kDistributionTol);

  int rows() const { return static_cast<int>(values_.rows()); }
  int cols() const { return static_cast<int>(values_.cols()); }
  const RMatrix& values() const { return values_; }

 private:
  RMatrix values_;
};

struct Frame {
  SynthesisMap synthesis;
  std::optional<AnalysisMap> analysis;  // present only for MIC frames
};

// Known names: sic, wootters, stabilizer1q, lambda_cube, wigner (d odd prime).
Frame catalog_frame(std::string_view name, std::optional<int> d = std::nullopt);
std::vector<std::string> catalog_frame_names();
bool is_catalog_frame(std::string_view name);

SynthesisMap product_frame(const std::vector<SynthesisMap>& parts);

QuasiDistribution analyze(const AnalysisMap& e_big, const HermitianOperator& rho);
HermitianOperator synthesize(const SynthesisMap& e, const QuasiDistribution& p);
// Same as synthesize but without the unit-sum requirement on p.
HermitianOperator synthesize_raw(const SynthesisMap& e, const RVector& p);

struct IcReport {
  int rank = 0;
  double smallest_singular_value = 0.0;  // sigma_D, or 0 when M < D
  bool informationally_complete = false;
};
IcReport check_ic(const SynthesisMap& e);

QuasiStochasticMatrix mic_channel_matrix(const AnalysisMap& e_big, const SynthesisMap& e,
                                         const KrausChannel& phi);
QuasiStochasticMatrix measurement_matrix(const SynthesisMap& e, const Povm& f);

}  // namespace quasineg
