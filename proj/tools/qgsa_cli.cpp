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

// Benchmark front end. Everything goes through the shared-library C API.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qgsa/qgsa.h"

namespace {

int report_failure(const char* what) {
  std::cerr << "error: " << what << ": " << qgsa_last_error() << "\n";
  return 1;
}

int run_train(const std::string& config, const std::string& out_dir, bool plots) {
  if (qgsa_train(config.c_str(), out_dir.c_str(), plots ? 1 : 0) != QGSA_OK) {
    return report_failure("train failed");
  }
  std::cout << "run artifacts written under " << out_dir << "\n";
  return 0;
}

int run_compare(const std::string& runs_dir, const std::string& out_dir) {
  char* table = nullptr;
  const char* out = out_dir.empty() ? nullptr : out_dir.c_str();
  if (qgsa_compare(runs_dir.c_str(), out, &table) != QGSA_OK) {
    return report_failure("compare failed");
  }
  std::cout << table;
  qgsa_string_free(table);
  std::cout << "comparison artifacts written under "
            << (out_dir.empty() ? runs_dir : out_dir) << "\n";
  return 0;
}

int run_shots(bool has_epsilon, double epsilon, bool has_gap, double gap, double delta) {
  std::uint64_t count = 0;
  if (has_epsilon) {
    if (qgsa_shots_for_precision(epsilon, delta, &count) != QGSA_OK) {
      return report_failure("shot calculator failed");
    }
    std::cout << "quantity   value\n";
    std::cout << "epsilon    " << epsilon << "\n";
    std::cout << "delta      " << delta << "\n";
    std::cout << "n_mu       " << count << "\n";
  } else if (has_gap) {
    if (qgsa_shots_for_descent(gap, delta, &count) != QGSA_OK) {
      return report_failure("shot calculator failed");
    }
    std::cout << "quantity   value\n";
    std::cout << "gap        " << gap << "\n";
    std::cout << "delta      " << delta << "\n";
    std::cout << "n_g        " << count << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-direction optimizer benchmark over a statevector simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qgsa_version()));

  auto* train = app.add_subcommand("train", "run a training configuration across its seeds");
  std::string config_path;
  std::string train_out = "out";
  bool plots = false;
  train->add_option("--config", config_path, "run configuration JSON")->required();
  train->add_option("--out", train_out, "output directory (default: out)");
  train->add_flag("--plots", plots, "also write SVG charts");

  auto* compare = app.add_subcommand("compare", "tabulate completed runs");
  std::string runs_dir;
  std::string compare_out;
  compare->add_option("--runs", runs_dir, "directory holding run outputs")->required();
  compare->add_option("--out", compare_out, "where to write the report (default: --runs)");

  auto* shots = app.add_subcommand("shots", "shot-count calculators");
  double epsilon = 0.0;
  double gap = 0.0;
  double delta = 0.0;
  auto* epsilon_opt = shots->add_option("--epsilon", epsilon, "target precision");
  auto* gap_opt = shots->add_option("--gap", gap, "objective gap between compared points");
  shots->add_option("--delta", delta, "failure probability")->required();
  epsilon_opt->excludes(gap_opt);

  CLI11_PARSE(app, argc, argv);

  if (train->parsed()) {
    return run_train(config_path, train_out, plots);
  }
  if (compare->parsed()) {
    return run_compare(runs_dir, compare_out);
  }
  if (shots->parsed()) {
    const bool has_epsilon = epsilon_opt->count() > 0;
    const bool has_gap = gap_opt->count() > 0;
    if (!has_epsilon && !has_gap) {
      std::cerr << "error: pass --epsilon or --gap\n";
      return 1;
    }
    return run_shots(has_epsilon, epsilon, has_gap, gap, delta);
  }
  return 0;
}
