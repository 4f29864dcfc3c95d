// Copyright 2026 The qgsa developers
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

#include <filesystem>
#include <string>
#include <vector>

#include "qgsa/bench.hpp"

namespace qgsa::bench {

std::string optimizer_name(OptimizerKind kind);
OptimizerKind optimizer_from_name(const std::string& name);

std::string loss_name(LossKind kind);
LossKind loss_from_name(const std::string& name);

struct TraceRow {
  std::uint64_t t = 0;
  double loss = 0.0;
  std::uint64_t circuits = 0;
  std::uint64_t shots = 0;
  double cost = 0.0;
  double alpha = 0.0;
  bool accepted = true;
  int sign = 0;
};

/// Parses a trace CSV produced by render_trace_csv.
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace qgsa::bench
