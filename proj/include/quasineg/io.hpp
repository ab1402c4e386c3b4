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

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "quasineg/circuit.hpp"
#include "quasineg/frames.hpp"

namespace quasineg {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

Json matrix_to_json(const CMatrix& m);
// `path` prefixes error messages, e.g. "ops[2]".
CMatrix matrix_from_json(const Json& j, int dim, const std::string& path);

Json frame_to_json(const SynthesisMap& e, const Json& metadata = nullptr);
SynthesisMap frame_from_json(const Json& j);

struct FrameFile {
  SynthesisMap frame;
  Json metadata;
};

void write_frame_file(const std::string& path, const SynthesisMap& e, const Json& metadata = nullptr);
FrameFile read_frame_file(const std::string& path);

// Catalog name (optionally "wigner:D") or path to a frame file.
SynthesisMap resolve_frame(const std::string& name_or_path);

Json circuit_to_json(const CircuitDescription& c);
CircuitDescription circuit_from_json(const Json& j);
CircuitDescription read_circuit_file(const std::string& path);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json make_manifest(const std::string& command, const Json& parameters, std::uint64_t seed,
                   double wall_time_s, const Json& outputs);

// Comma-separated, LF line endings, one header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
std::string format_csv(const CsvTable& t);
CsvTable parse_csv(const std::string& text);
std::string format_bits(double v);  // 4 decimal places

}  // namespace quasineg
