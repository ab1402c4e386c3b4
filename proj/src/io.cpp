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

#include "quasineg/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "quasineg/error.hpp"

namespace quasineg {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

int get_int(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) fail(path, std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) fail(path, "expected " + std::to_string(dim) + " rows");
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      fail(rp, "expected " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      const Json& z = row[static_cast<size_t>(c)];
      const std::string zp = rp + "[" + std::to_string(c) + "]";
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        fail(zp, "expected a [re, im] pair");
      }
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

Json frame_to_json(const SynthesisMap& e, const Json& metadata) {
  Json j;
  j["label"] = e.label();
  j["dim"] = e.dim();
  j["M"] = e.size();
  Json ops = Json::array();
  for (const auto& op : e.ops()) ops.push_back(matrix_to_json(op.matrix()));
  j["ops"] = std::move(ops);
  if (!metadata.is_null()) j["metadata"] = metadata;
  return j;
}

SynthesisMap frame_from_json(const Json& j) {
  if (!j.is_object()) fail("frame", "expected an object");
  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail("label", "expected a string");
    label = j["label"].get<std::string>();
  }
  const int dim = get_int(j, "dim", "frame");
  const int m = get_int(j, "M", "frame");
  if (dim < 2) fail("dim", "must be >= 2");
  if (m < 1) fail("M", "must be >= 1");
  if (!j.contains("ops") || !j["ops"].is_array()) fail("ops", "missing or not an array");
  if (static_cast<int>(j["ops"].size()) != m) {
    fail("ops", "has " + std::to_string(j["ops"].size()) + " operators but M = " + std::to_string(m));
  }
  std::vector<HermitianOperator> ops;
  for (int k = 0; k < m; ++k) {
    const std::string path = "ops[" + std::to_string(k) + "]";
    const CMatrix mat = matrix_from_json(j["ops"][static_cast<size_t>(k)], dim, path);
    const double anti = ((mat - mat.adjoint()) * 0.5).norm();
    if (anti > kOperatorTol) fail(path, "operator is not Hermitian");
    const double tr = mat.trace().real();
    if (std::abs(tr - 1.0) > kOperatorTol) {
      std::ostringstream os;
      os << "trace is " << tr << ", expected 1";
      fail(path, os.str());
    }
    ops.emplace_back(mat, kOperatorTol);
  }
  return SynthesisMap(std::move(ops), label);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw ValidationError("'" + path + "' is not valid JSON: " + ex.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

void write_frame_file(const std::string& path, const SynthesisMap& e, const Json& metadata) {
  write_text_file(path, frame_to_json(e, metadata).dump(2) + "\n");
}

FrameFile read_frame_file(const std::string& path) {
  const Json j = read_json_file(path);
  FrameFile f{frame_from_json(j), j.contains("metadata") ? j["metadata"] : Json()};
  return f;
}

SynthesisMap resolve_frame(const std::string& name_or_path) {
  if (is_catalog_frame(name_or_path)) return catalog_frame(name_or_path).synthesis;
  if (name_or_path.rfind("wigner:", 0) == 0) {
    const std::string num = name_or_path.substr(7);
    int d = 0;
    try {
      d = std::stoi(num);
    } catch (const std::exception&) {
      throw ValidationError("bad wigner dimension '" + num + "'");
    }
    return catalog_frame("wigner", d).synthesis;
  }
  std::ifstream probe(name_or_path);
  if (!probe) throw ValidationError("'" + name_or_path + "' is neither a catalog frame nor a readable file");
  return read_frame_file(name_or_path).frame;
}

Json circuit_to_json(const CircuitDescription& c) {
  Json j;
  j["n"] = c.n;
  j["initial"] = c.initial;
  Json gates = Json::array();
  for (const auto& g : c.gates) {
    Json gj;
    gj["name"] = std::string(gate_name(g.id));
    if (g.theta) gj["theta"] = *g.theta;
    gj["targets"] = g.targets;
    gates.push_back(std::move(gj));
  }
  j["gates"] = std::move(gates);
  if (c.noise) j["noise"] = {{"kind", std::string(noise_name(c.noise->kind))}, {"p", c.noise->p}};
  Json measure = Json::object();
  for (size_t q = 0; q < c.measure.size(); ++q) {
    measure[std::to_string(q)] = c.measure[q] ? Json(*c.measure[q]) : Json(nullptr);
  }
  j["measure"] = std::move(measure);
  return j;
}

CircuitDescription circuit_from_json(const Json& j) {
  if (!j.is_object()) fail("circuit", "expected an object");
  CircuitDescription c;
  c.n = get_int(j, "n", "circuit");
  if (c.n < 1) fail("n", "must be >= 1");
  if (!j.contains("initial") || !j["initial"].is_array()) fail("initial", "missing or not an array");
  for (size_t q = 0; q < j["initial"].size(); ++q) {
    const Json& s = j["initial"][q];
    if (!s.is_string()) fail("initial[" + std::to_string(q) + "]", "expected a string");
    c.initial.push_back(s.get<std::string>());
  }
  if (j.contains("gates")) {
    if (!j["gates"].is_array()) fail("gates", "expected an array");
    for (size_t g = 0; g < j["gates"].size(); ++g) {
      const Json& gj = j["gates"][g];
      const std::string path = "gates[" + std::to_string(g) + "]";
      if (!gj.is_object() || !gj.contains("name") || !gj["name"].is_string()) {
        fail(path, "expected an object with a 'name'");
      }
      GateOp op;
      try {
        op.id = parse_gate_id(gj["name"].get<std::string>());
      } catch (const ValidationError& ex) {
        fail(path + ".name", ex.what());
      }
      if (gj.contains("theta") && !gj["theta"].is_null()) {
        if (!gj["theta"].is_number()) fail(path + ".theta", "expected a number");
        op.theta = gj["theta"].get<double>();
      }
      if (!gj.contains("targets") || !gj["targets"].is_array()) fail(path + ".targets", "missing or not an array");
      for (const auto& t : gj["targets"]) {
        if (!t.is_number_integer()) fail(path + ".targets", "expected integers");
        op.targets.push_back(t.get<int>());
      }
      c.gates.push_back(std::move(op));
    }
  }
  if (j.contains("noise") && !j["noise"].is_null()) {
    const Json& nj = j["noise"];
    if (!nj.is_object() || !nj.contains("kind") || !nj["kind"].is_string() || !nj.contains("p") ||
        !nj["p"].is_number()) {
      fail("noise", "expected {kind, p}");
    }
    NoiseSpec spec;
    try {
      spec.kind = parse_noise_kind(nj["kind"].get<std::string>());
    } catch (const ValidationError& ex) {
      fail("noise.kind", ex.what());
    }
    spec.p = nj["p"].get<double>();
    if (!(spec.p >= 0.0 && spec.p <= 1.0)) fail("noise.p", "must lie in [0, 1]");
    c.noise = spec;
  }
  c.measure.assign(static_cast<size_t>(c.n), std::nullopt);
  if (j.contains("measure") && !j["measure"].is_null()) {
    const Json& mj = j["measure"];
    if (!mj.is_object()) fail("measure", "expected an object keyed by qubit index");
    for (const auto& [key, val] : mj.items()) {
      int q = -1;
      try {
        size_t used = 0;
        q = std::stoi(key, &used);
        if (used != key.size()) q = -1;
      } catch (const std::exception&) {
        q = -1;
      }
      if (q < 0 || q >= c.n) fail("measure." + key, "not a valid qubit index");
      if (val.is_null()) continue;
      if (!val.is_string()) fail("measure." + key, "expected \"Z\" or null");
      c.measure[static_cast<size_t>(q)] = val.get<std::string>();
    }
  }
  validate_circuit(c);
  return c;
}

CircuitDescription read_circuit_file(const std::string& path) { return circuit_from_json(read_json_file(path)); }

Json make_manifest(const std::string& command, const Json& parameters, std::uint64_t seed,
                   double wall_time_s, const Json& outputs) {
  Json m;
  m["command"] = command;
  m["parameters"] = parameters;
  m["seed"] = seed;
  m["tool_version"] = kToolVersion;
  m["wall_time_s"] = wall_time_s;
  m["outputs"] = outputs;
  return m;
}

std::string format_csv(const CsvTable& t) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool first = true;
  auto finish_row = [&] {
    cells.push_back(cell);
    cell.clear();
    if (first) {
      t.header = cells;
      first = false;
    } else {
      t.rows.push_back(cells);
    }
    cells.clear();
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c == '\n') {
      finish_row();
    } else {
      cell += c;
    }
  }
  if (!cell.empty() || !cells.empty()) finish_row();
  return t;
}

std::string format_bits(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace quasineg
