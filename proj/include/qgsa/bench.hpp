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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "qgsa/optimizers.hpp"
#include "qgsa/problem.hpp"
#include "qgsa/qml.hpp"
#include "qgsa/shots_cost.hpp"

namespace qgsa::bench {

struct DatasetSpec {
  enum class Type { kIris, kFeatureCsv, kSynthetic };
  Type type = Type::kSynthetic;
  std::filesystem::path path;  // iris / feature_csv
  std::string class_pos = "setosa";
  std::string class_neg = "versicolor";
  std::size_t n_per_class = 100;  // synthetic
  std::size_t d = 4;
  std::uint64_t seed = 7;
};

/// One benchmark run: a classification problem, an optimizer, a seed fan-out
/// and the pricing profile used for the trace cost column.
struct RunConfig {
  std::string name;
  DatasetSpec dataset;
  int layers = 3;
  LossKind loss = LossKind::kQuantumHinge;
  bool mean_risk = false;
  RunOptions run;
  std::vector<std::uint64_t> seeds;
  std::uint64_t init_seed = 1;
  PricingProfile pricing;

  static RunConfig from_json_file(const std::filesystem::path& path);
  static RunConfig from_json_text(const std::string& text);
};

struct BenchProblem {
  std::unique_ptr<Problem> problem;
  std::string dataset_name;
  std::size_t param_count = 0;
  std::size_t n_examples = 0;
};

BenchProblem make_problem(const RunConfig& config);

/// Shared starting point: uniform draw from [0, 2pi)^k seeded by init_seed
/// alone, so every optimizer and every seed starts identically.
std::vector<double> initial_theta(std::size_t param_count, std::uint64_t init_seed);

struct TrainResult {
  std::filesystem::path run_dir;
  std::vector<std::filesystem::path> trace_files;  // one CSV per seed
  std::filesystem::path summary_file;
  std::vector<std::filesystem::path> plot_files;
};

/// Runs every seed (bounded worker pool), then writes per-seed trace CSVs, a
/// summary JSON and, optionally, SVG charts under out_dir/<config name>/.
/// All artifacts are reproducible from the config alone.
TrainResult train_run(const RunConfig& config, const std::filesystem::path& out_dir,
                      bool write_plots);

struct CompareResult {
  std::filesystem::path table_csv;
  std::filesystem::path report_json;
  std::vector<std::filesystem::path> plot_files;
  std::string rendered_table;  // what the CLI prints
};

/// Collects summary.json files under runs_dir (recursively), tabulates final
/// losses, circuit totals, costs under every builtin profile and the circuit
/// ratio against the GD run of the same dataset/loss group, and writes one
/// overlaid loss-vs-circuits chart per group. Needs at least two summaries.
CompareResult compare_runs(const std::filesystem::path& runs_dir,
                           const std::filesystem::path& out_dir);

/// Trace CSV column order: t,loss,circuits,shots,cost,alpha,accepted,sign.
std::string render_trace_csv(const OptimizerTrace& trace, const PricingProfile& pricing);

}  // namespace qgsa::bench
