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

#include "quasineg/tables.hpp"

#include <cstdlib>

#include "quasineg/error.hpp"

namespace quasineg {

namespace {

struct Column {
  std::string label;
  std::string frame;  // catalog name; empty for an optimized column
  int m = 0;
};

std::vector<Column> table_columns(const std::string& stabilizer_label) {
  return {{"Wootters", "wootters", 4},          {"SIC-POVM", "sic", 4},
          {"Optimized M=4", "", 4},             {stabilizer_label, "stabilizer1q", 6},
          {"Optimized M=6", "", 6},             {"Lambda-polytope", "lambda_cube", 8},
          {"Optimized M=8", "", 8}};
}

OptimizerConfig make_config(const ReproduceOptions& opts, MeasurementNorm norm) {
  OptimizerConfig cfg;
  cfg.restarts = opts.restarts;
  cfg.seed = opts.seed;
  cfg.max_iters = opts.max_iters;
  cfg.objective.ledger.measurement_norm = norm;
  return cfg;
}

void emit(std::vector<TableCell>& out, const ReproduceOptions& opts, TableCell cell) {
  if (opts.progress) opts.progress(cell);
  out.push_back(std::move(cell));
}

std::vector<TableCell> reproduce_table(const std::function<CircuitLedger(const std::optional<NoiseSpec>&)>& make,
                                       const std::string& stabilizer_label, const ReproduceOptions& opts) {
  LedgerOptions lopts;
  lopts.measurement_norm = opts.table_norm;
  std::vector<TableCell> out;
  for (const auto& row : noise_rows()) {
    const CircuitLedger ledger = make(row.noise);
    for (const auto& col : table_columns(stabilizer_label)) {
      if (!col.frame.empty()) {
        const SynthesisMap e = catalog_frame(col.frame).synthesis;
        emit(out, opts, {row.label, col.label, ledger_negativity(e, ledger, lopts).total_bits});
      } else if (!opts.baselines_only) {
        const OptimizeResult r = optimize(ledger, col.m, make_config(opts, opts.table_norm));
        emit(out, opts, {row.label, col.label, r.best_value});
      }
    }
  }
  return out;
}

void sweep_cells(std::vector<TableCell>& out, const ReproduceOptions& opts, const std::string& row,
                 const CircuitLedger& ledger) {
  OptimizerConfig cfg = make_config(opts, opts.figure_norm);
  for (int m = opts.m_min; m <= opts.m_max; ++m) {
    const OptimizeResult r = optimize(ledger, m, cfg);
    emit(out, opts, {row, "M=" + std::to_string(m), r.best_value});
    cfg.warm_frames = {r.best_frame};
  }
}

}  // namespace

std::vector<NoiseRow> noise_rows() {
  std::vector<NoiseRow> rows{{"Ideal", std::nullopt}};
  const std::pair<NoiseKind, const char*> kinds[] = {
      {NoiseKind::kDepolarizing, "Depol"}, {NoiseKind::kDephasing, "Deph"}, {NoiseKind::kAmplitudeDamping, "Damp"}};
  const std::pair<double, const char*> levels[] = {{0.1, "0.1"}, {0.2, "0.2"}, {0.4, "0.4"}};
  for (const auto& [kind, name] : kinds) {
    for (const auto& [p, text] : levels) {
      NoiseSpec spec;
      spec.kind = kind;
      spec.p = p;
      rows.push_back({std::string(name) + " p=" + text, spec});
    }
  }
  return rows;
}

std::vector<OptimizeResult> optimize_sweep(const CircuitLedger& ledger, int m_min, int m_max,
                                           const OptimizerConfig& cfg) {
  std::vector<OptimizeResult> results;
  OptimizerConfig c = cfg;
  for (int m = m_min; m <= m_max; ++m) {
    results.push_back(optimize(ledger, m, c));
    c.warm_frames = cfg.warm_frames;
    c.warm_frames.push_back(results.back().best_frame);
  }
  return results;
}

std::vector<TableCell> reproduce_table1(const ReproduceOptions& opts) {
  return reproduce_table([](const std::optional<NoiseSpec>& n) { return block("c2q_t", n); }, "Stabilizers", opts);
}

std::vector<TableCell> reproduce_table2(const ReproduceOptions& opts) {
  const int b = opts.variational_b;
  return reproduce_table([b](const std::optional<NoiseSpec>& n) { return variational_gateset(b, n); },
                         "Stabilizer", opts);
}

std::vector<TableCell> reproduce_fig3(const ReproduceOptions& opts) {
  std::vector<TableCell> out;
  for (const char* name : {"c1q", "c1q_t", "c2q", "c2q_t"}) {
    sweep_cells(out, opts, std::string(name) + " Ideal", block(name));
  }
  for (const auto& row : noise_rows()) {
    if (!row.noise) continue;
    sweep_cells(out, opts, "c2q_t " + row.label, block("c2q_t", row.noise));
  }
  return out;
}

std::vector<TableCell> reproduce_fig5(const ReproduceOptions& opts) {
  std::vector<TableCell> out;
  for (const auto& row : noise_rows()) {
    sweep_cells(out, opts, row.label, variational_gateset(opts.variational_b, row.noise));
  }
  return out;
}

CsvTable cells_to_csv(const std::vector<TableCell>& cells) {
  CsvTable t;
  t.header = {"row", "column", "value_bits"};
  for (const auto& c : cells) t.rows.push_back({c.row, c.column, format_bits(c.value_bits)});
  return t;
}

std::vector<TableCell> cells_from_csv(const CsvTable& t) {
  if (t.header != std::vector<std::string>{"row", "column", "value_bits"}) {
    throw ValidationError("csv header must be row,column,value_bits");
  }
  std::vector<TableCell> cells;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    if (r.size() != 3) throw ValidationError("csv row " + std::to_string(i + 1) + ": expected 3 fields");
    char* end = nullptr;
    const double v = std::strtod(r[2].c_str(), &end);
    if (end == r[2].c_str() || *end != '\0') {
      throw ValidationError("csv row " + std::to_string(i + 1) + ": bad value '" + r[2] + "'");
    }
    cells.push_back({r[0], r[1], v});
  }
  return cells;
}

}  // namespace quasineg
