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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quasineg/circuit.hpp"
#include "quasineg/io.hpp"
#include "quasineg/optimizer.hpp"

namespace quasineg {

struct TableCell {
  std::string row;
  std::string column;
  double value_bits = 0.0;
};

// "Ideal", then "Depol p=0.1", ..., "Damp p=0.4".
struct NoiseRow {
  std::string label;
  std::optional<NoiseSpec> noise;
};
std::vector<NoiseRow> noise_rows();

struct ReproduceOptions {
  bool baselines_only = false;
  int restarts = 30;
  int max_iters = 200;
  std::uint64_t seed = 1;
  // Tables use the column-norm reading of the measurement term, which is the
  // one the printed SIC-POVM column agrees with.
  MeasurementNorm table_norm = MeasurementNorm::kColumnL1;
  MeasurementNorm figure_norm = MeasurementNorm::kMaxEntry;
  int variational_b = 10;
  int m_min = 4;
  int m_max = 9;
  // Called after each finished cell; may be empty.
  std::function<void(const TableCell&)> progress;
};

// Columns: Wootters, SIC-POVM, Optimized M=4, Stabilizers, Optimized M=6,
// Lambda-polytope, Optimized M=8.
std::vector<TableCell> reproduce_table1(const ReproduceOptions& opts);
// Same layout on the variational gate set ("Stabilizer" column label).
std::vector<TableCell> reproduce_table2(const ReproduceOptions& opts);
// Rows are "<block> <noise row>", columns "M=4" ... "M=9".
std::vector<TableCell> reproduce_fig3(const ReproduceOptions& opts);
std::vector<TableCell> reproduce_fig5(const ReproduceOptions& opts);

// Best-of-restarts runs for M = m_min..m_max; each run gets the previous
// best frame as a warm start.
std::vector<OptimizeResult> optimize_sweep(const CircuitLedger& ledger, int m_min, int m_max,
                                           const OptimizerConfig& cfg);

CsvTable cells_to_csv(const std::vector<TableCell>& cells);
std::vector<TableCell> cells_from_csv(const CsvTable& t);

}  // namespace quasineg
