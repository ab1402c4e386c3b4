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

// quasineg command-line tool.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "quasineg/circuit.hpp"
#include "quasineg/error.hpp"
#include "quasineg/frames.hpp"
#include "quasineg/io.hpp"
#include "quasineg/montecarlo.hpp"
#include "quasineg/optimizer.hpp"
#include "quasineg/parallel.hpp"
#include "quasineg/tables.hpp"

namespace fs = std::filesystem;
using namespace quasineg;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kValidation = 2, kInfeasible = 3, kSizeCap = 4 };

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::optional<NoiseSpec> noise_from_flag(const std::string& flag) {
  if (flag.empty() || flag == "none" || flag == "ideal") return std::nullopt;
  return parse_noise_spec(flag);
}

SynthesisMap qubit_frame(const std::string& name) {
  SynthesisMap e = resolve_frame(name);
  if (e.dim() != 2) throw ValidationError("frame '" + name + "' has dim " + std::to_string(e.dim()) + ", need 2");
  return e;
}

// ---- frames ----------------------------------------------------------------

struct FramesArgs {
  std::string name;
  std::string out;
  std::string path;
};

int cmd_frames_list() {
  std::cout << "name,dim,M,ic_rank,smallest_singular_value\n";
  for (const auto& name : catalog_frame_names()) {
    const SynthesisMap e = catalog_frame(name).synthesis;
    const IcReport ic = check_ic(e);
    std::printf("%s,%d,%d,%d,%.6g\n", name.c_str(), e.dim(), e.size(), ic.rank, ic.smallest_singular_value);
  }
  return kOk;
}

int cmd_frames_export(const FramesArgs& a) {
  const SynthesisMap e = resolve_frame(a.name);
  write_frame_file(a.out, e);
  std::cout << "wrote " << a.out << " (" << e.label() << ", dim " << e.dim() << ", M " << e.size() << ")\n";
  return kOk;
}

int cmd_frames_import(const FramesArgs& a) {
  const FrameFile f = read_frame_file(a.path);
  const IcReport ic = check_ic(f.frame);
  std::cout << "label," << f.frame.label() << "\n"
            << "dim," << f.frame.dim() << "\n"
            << "M," << f.frame.size() << "\n"
            << "ic_rank," << ic.rank << "\n"
            << "informationally_complete," << (ic.informationally_complete ? "true" : "false") << "\n";
  std::printf("smallest_singular_value,%.6g\n", ic.smallest_singular_value);
  return kOk;
}

// ---- negativity --------------------------------------------------------------

struct NegativityArgs {
  std::string block;
  std::string circuit;
  std::string frame;
  std::string noise;
  std::string norm = "entry";
};

int cmd_negativity(const NegativityArgs& a) {
  const SynthesisMap e = qubit_frame(a.frame);
  CircuitLedger ledger;
  if (!a.block.empty()) {
    ledger = block(a.block, noise_from_flag(a.noise));
  } else {
    CircuitDescription c = read_circuit_file(a.circuit);
    if (!a.noise.empty()) c.noise = noise_from_flag(a.noise);
    ledger = circuit_to_ledger(c);
  }
  LedgerOptions opts;
  opts.measurement_norm = parse_measurement_norm(a.norm);
  const LedgerNegativity neg = ledger_negativity(e, ledger, opts);
  CsvTable t;
  t.header = {"element", "arity", "multiplicity", "negativity_bits", "total"};
  for (const auto& el : neg.per_element) {
    t.rows.push_back({el.label, std::to_string(el.arity), std::to_string(el.multiplicity),
                      format_bits(el.negativity_bits), format_bits(el.multiplicity * el.negativity_bits)});
  }
  t.rows.push_back({"total", "", "", "", format_bits(neg.total_bits)});
  std::cout << format_csv(t);
  return kOk;
}

// ---- optimize ----------------------------------------------------------------

struct OptimizeArgs {
  std::string block;
  std::string gateset;
  int b = 10;
  int m = 4;
  std::string noise;
  int restarts = 30;
  std::uint64_t seed = 1;
  int max_iters = 200;
  std::string out;
  std::string norm = "entry";
  std::string gradient = "analytic";
  std::vector<std::string> warm;
};

int cmd_optimize(const OptimizeArgs& a) {
  const auto t0 = Clock::now();
  if (a.m < 4) throw ValidationError("--M must be >= 4");
  if (a.restarts < 0) throw ValidationError("--restarts must be >= 0");
  const auto noise = noise_from_flag(a.noise);
  CircuitLedger ledger;
  if (!a.block.empty()) {
    ledger = block(a.block, noise);
  } else {
    if (a.gateset != "variational") throw ValidationError("unknown gate set '" + a.gateset + "'");
    if (a.b < 1) throw ValidationError("--B must be >= 1");
    ledger = variational_gateset(a.b, noise);
  }
  OptimizerConfig cfg;
  cfg.restarts = a.restarts;
  cfg.seed = a.seed;
  cfg.max_iters = a.max_iters;
  cfg.objective.ledger.measurement_norm = parse_measurement_norm(a.norm);
  if (a.gradient == "analytic") {
    cfg.gradient = GradientMode::kAnalytic;
  } else if (a.gradient == "fd") {
    cfg.gradient = GradientMode::kFiniteDifference;
  } else {
    throw ValidationError("--gradient must be analytic or fd");
  }
  for (const auto& w : a.warm) cfg.warm_frames.push_back(qubit_frame(w));

  const OptimizeResult r = optimize(ledger, a.m, cfg);

  CsvTable t;
  t.header = {"restart", "start", "start_bits", "final_bits", "iterations", "status"};
  for (const auto& rec : r.trace) {
    t.rows.push_back({std::to_string(rec.index), rec.start, format_bits(rec.start_value),
                      format_bits(rec.final_value), std::to_string(rec.iterations),
                      rec.failed ? "failed: " + rec.message : "ok"});
  }
  t.rows.push_back({"best", std::to_string(r.best_index), "", format_bits(r.best_value), "", "ok"});
  std::cout << format_csv(t);

  if (!a.out.empty()) {
    Json params = {{"source", a.block.empty() ? "gateset:" + a.gateset : "block:" + canonical_block_name(a.block)},
                   {"B", a.b},
                   {"M", a.m},
                   {"noise", noise ? format_noise_spec(*noise) : "none"},
                   {"restarts", a.restarts},
                   {"max_iters", a.max_iters},
                   {"measurement_norm", measurement_norm_name(cfg.objective.ledger.measurement_norm)},
                   {"gradient", a.gradient}};
    Json meta = {{"ledger_hash", ledger.hash()},
                 {"M", a.m},
                 {"seed", a.seed},
                 {"restarts", a.restarts},
                 {"best_value", r.best_value}};
    meta["manifest"] = make_manifest("optimize", params, a.seed, seconds_since(t0), Json::array({a.out}));
    write_frame_file(a.out, r.best_frame, meta);
  }
  return kOk;
}

// ---- simulate ----------------------------------------------------------------

struct SimulateArgs {
  std::string circuit;
  std::string frame;
  double eps = 0.02;
  double delta = 0.05;
  std::uint64_t seed = 1;
  int outcome = 0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  const auto t0 = Clock::now();
  const CircuitDescription c = read_circuit_file(a.circuit);
  const SynthesisMap e = qubit_frame(a.frame);
  const int outcomes = measured_outcome_count(c);
  if (a.outcome < 0 || a.outcome >= outcomes) {
    throw ValidationError("--outcome must lie in [0, " + std::to_string(outcomes) + ")");
  }
  const SamplingPlan plan = build_circuit_plan(c, e, a.outcome);
  const long long n = hoeffding_samples(plan.n_tot_ln, a.eps, a.delta);
  const EstimateReport rep = estimate(plan, n, a.seed, a.delta);

  Json report;
  report["q_est"] = rep.q_est;
  report["n_samples"] = rep.n_samples;
  report["N_tot_bits"] = rep.n_tot_log2;
  report["N_tot_ln"] = rep.n_tot_ln;
  report["hoeffding_bound"] = rep.hoeffding_bound;
  report["max_abs_chi"] = rep.max_abs_chi;
  if (c.n <= kExactMaxQubits) {
    const double q = exact_probability(c, a.outcome);
    report["q_exact"] = q;
    report["abs_error"] = std::abs(rep.q_est - q);
  } else {
    report["q_exact"] = nullptr;
    report["abs_error"] = nullptr;
  }
  Json params = {{"circuit", a.circuit}, {"frame", a.frame}, {"eps", a.eps},
                 {"delta", a.delta},     {"outcome", a.outcome}};
  report["manifest"] = make_manifest("simulate", params, a.seed, seconds_since(t0),
                                     a.out.empty() ? Json::array() : Json::array({a.out}));
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!a.out.empty()) write_text_file(a.out, text);
  return kOk;
}

// ---- reproduce ---------------------------------------------------------------

struct ReproduceArgs {
  std::string target;
  std::string out = ".";
  bool baselines_only = false;
  int restarts = 30;
  int max_iters = 200;
  std::uint64_t seed = 1;
  bool quiet = false;
};

int cmd_reproduce(const ReproduceArgs& a) {
  const auto t0 = Clock::now();
  ReproduceOptions opts;
  opts.baselines_only = a.baselines_only;
  opts.restarts = a.restarts;
  opts.max_iters = a.max_iters;
  opts.seed = a.seed;
  if (!a.quiet) {
    opts.progress = [](const TableCell& c) {
      std::cerr << c.row << " | " << c.column << " | " << format_bits(c.value_bits) << "\n";
    };
  }
  std::vector<TableCell> cells;
  if (a.target == "table1") {
    cells = reproduce_table1(opts);
  } else if (a.target == "table2") {
    cells = reproduce_table2(opts);
  } else if (a.target == "fig3") {
    if (a.baselines_only) throw ValidationError("fig3 has no baseline columns");
    cells = reproduce_fig3(opts);
  } else if (a.target == "fig5") {
    if (a.baselines_only) throw ValidationError("fig5 has no baseline columns");
    cells = reproduce_fig5(opts);
  } else {
    throw ValidationError("unknown target '" + a.target + "'");
  }
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw ValidationError("cannot create '" + a.out + "': " + ec.message());
  const std::string csv_path = (fs::path(a.out) / (a.target + ".csv")).string();
  const std::string manifest_path = (fs::path(a.out) / (a.target + ".manifest.json")).string();
  write_text_file(csv_path, format_csv(cells_to_csv(cells)));
  Json params = {{"target", a.target},
                 {"baselines_only", a.baselines_only},
                 {"restarts", a.restarts},
                 {"max_iters", a.max_iters},
                 {"table_norm", measurement_norm_name(opts.table_norm)},
                 {"figure_norm", measurement_norm_name(opts.figure_norm)}};
  write_text_file(manifest_path,
                  make_manifest("reproduce", params, a.seed, seconds_since(t0), Json::array({csv_path})).dump(2) +
                      "\n");
  std::cout << "wrote " << csv_path << " (" << cells.size() << " cells)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasiprobability representations: frames, negativity, optimization, sampling"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker thread cap")->check(CLI::PositiveNumber);

  auto* frames = app.add_subcommand("frames", "Frame catalog export and import");
  frames->require_subcommand(1);
  FramesArgs fa;
  auto* f_list = frames->add_subcommand("list", "List catalog frames");
  auto* f_export = frames->add_subcommand("export", "Write a catalog frame to a file");
  f_export->add_option("--name", fa.name, "Catalog name, or wigner:D")->required();
  f_export->add_option("--out", fa.out, "Output path")->required();
  auto* f_import = frames->add_subcommand("import", "Validate a frame file");
  f_import->add_option("--path", fa.path, "Frame file")->required();

  auto* neg = app.add_subcommand("negativity", "Per-element negativity of a block or circuit");
  NegativityArgs na;
  auto* neg_block = neg->add_option("--block", na.block, "Block name");
  auto* neg_circ = neg->add_option("--circuit", na.circuit, "Circuit file");
  neg_block->excludes(neg_circ);
  neg->add_option("--frame", na.frame, "Frame name or file")->required();
  neg->add_option("--noise", na.noise, "KIND:P with KIND in depol, deph, damp");
  neg->add_option("--measurement-norm", na.norm, "entry or column");

  auto* opt = app.add_subcommand("optimize", "Multi-start frame optimization");
  OptimizeArgs oa;
  auto* opt_block = opt->add_option("--block", oa.block, "Block name");
  auto* opt_gs = opt->add_option("--gateset", oa.gateset, "Gate set (variational)");
  opt_block->excludes(opt_gs);
  opt->add_option("--B", oa.b, "Angle grid size for the variational gate set");
  opt->add_option("--M", oa.m, "Frame size")->required();
  opt->add_option("--noise", oa.noise, "KIND:P");
  opt->add_option("--restarts", oa.restarts, "Random restarts");
  opt->add_option("--seed", oa.seed, "Seed");
  opt->add_option("--max-iters", oa.max_iters, "Iterations per local solve");
  opt->add_option("--out", oa.out, "Write the best frame here");
  opt->add_option("--measurement-norm", oa.norm, "entry or column");
  opt->add_option("--gradient", oa.gradient, "analytic or fd");
  opt->add_option("--warm", oa.warm, "Extra warm-start frames (names or files)");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of an outcome probability");
  SimulateArgs sa;
  sim->add_option("--circuit", sa.circuit, "Circuit file")->required();
  sim->add_option("--frame", sa.frame, "Frame name or file")->required();
  sim->add_option("--eps", sa.eps, "Target precision");
  sim->add_option("--delta", sa.delta, "Failure probability");
  sim->add_option("--seed", sa.seed, "Seed");
  sim->add_option("--outcome", sa.outcome, "Outcome index over measured qubits (lowest qubit = MSB)");
  sim->add_option("--out", sa.out, "Also write the report here");

  auto* rep = app.add_subcommand("reproduce", "Regenerate table and figure data as CSV");
  ReproduceArgs ra;
  rep->add_option("target", ra.target, "table1, table2, fig3 or fig5")->required();
  rep->add_option("--out", ra.out, "Output directory");
  rep->add_flag("--baseline-only", ra.baselines_only, "Skip the optimized columns");
  rep->add_option("--restarts", ra.restarts, "Random restarts per optimized cell");
  rep->add_option("--max-iters", ra.max_iters, "Iterations per local solve");
  rep->add_option("--seed", ra.seed, "Seed");
  rep->add_flag("--quiet", ra.quiet, "No per-cell progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    set_worker_threads(threads);
    if (*f_list) return cmd_frames_list();
    if (*f_export) return cmd_frames_export(fa);
    if (*f_import) return cmd_frames_import(fa);
    if (*neg) {
      if (na.block.empty() == na.circuit.empty()) throw ValidationError("give exactly one of --block, --circuit");
      return cmd_negativity(na);
    }
    if (*opt) {
      if (oa.block.empty() == oa.gateset.empty()) throw ValidationError("give exactly one of --block, --gateset");
      return cmd_optimize(oa);
    }
    if (*sim) return cmd_simulate(sa);
    if (*rep) return cmd_reproduce(ra);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const SizeCapError& e) {
    std::cerr << "size cap: " << e.what() << "\n";
    return kSizeCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
