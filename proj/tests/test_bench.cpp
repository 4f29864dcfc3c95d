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

#include "qgsa/bench.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bench_internal.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace qgsa;
using namespace qgsa::bench;

namespace {

std::string tiny_config(const std::string& name, const std::string& optimizer) {
  return R"({
    "name": ")" + name + R"(",
    "dataset": {"type": "synthetic", "n_per_class": 5, "d": 2, "seed": 3},
    "layers": 1,
    "loss": "qh",
    "risk": "mean",
    "optimizer": ")" + optimizer + R"(",
    "hyperparameters": {"alpha": 0.1, "gamma": 0.1},
    "iterations": 3,
    "seeds": [1, 2],
    "init_seed": 11,
    "evaluator": {"mode": "exact", "n_mu": 100, "n_g": 100},
    "pricing_profile": "IonQ - Harmony",
    "termination": {"stall_limit": 0}
  })";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing fills every field") {
  const RunConfig config = RunConfig::from_json_text(tiny_config("demo-run", "qgsa_practical"));
  CHECK(config.name == "demo-run");
  CHECK(config.dataset.type == DatasetSpec::Type::kSynthetic);
  CHECK(config.dataset.n_per_class == 5);
  CHECK(config.layers == 1);
  CHECK(config.loss == LossKind::kQuantumHinge);
  CHECK(config.mean_risk);
  CHECK(config.run.optimizer == OptimizerKind::kQgsaPractical);
  CHECK(config.run.alpha0 == 0.1);
  CHECK(config.run.qgsa.gamma == 0.1);
  CHECK(config.run.iterations == 3);
  CHECK(config.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(config.init_seed == 11);
  CHECK(!config.run.eval.sampled);
  CHECK(config.run.eval.n_mu == 100);
  CHECK(config.pricing.name == "IonQ - Harmony");
  CHECK(config.run.termination.stall_limit == 0);
}

TEST_CASE("config parsing rejects malformed documents") {
  CHECK_THROWS_AS(RunConfig::from_json_text("not json"), std::runtime_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"name": "x"})"), std::runtime_error);

  auto wreck = [](const std::string& key, const std::string& value) {
    nlohmann::json doc = nlohmann::json::parse(tiny_config("ok", "gd"));
    doc[key] = nlohmann::json::parse(value);
    return doc.dump();
  };
  CHECK_THROWS_AS(RunConfig::from_json_text(wreck("optimizer", R"("sgd")")),
                  std::runtime_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(wreck("seeds", "[]")), std::runtime_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(wreck("loss", R"("l2")")), std::runtime_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(wreck("name", R"("bad name!")")),
                  std::runtime_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(wreck("surprise", "1")), std::runtime_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(wreck("pricing_profile", R"("Quantum Foo")")),
                  std::runtime_error);
  CHECK_THROWS_AS(
      RunConfig::from_json_text(wreck("hyperparameters", R"({"alpha": -0.5})")),
      std::runtime_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(wreck("evaluator", R"({"mode": "psychic"})")),
                  std::runtime_error);
}

TEST_CASE("evaluator shot counts derive from epsilon and delta") {
  nlohmann::json doc = nlohmann::json::parse(tiny_config("ok", "gd"));
  doc["evaluator"] = {{"mode", "sampled"}, {"epsilon", 0.01}, {"delta", 0.05}};
  const RunConfig config = RunConfig::from_json_text(doc.dump());
  CHECK(config.run.eval.sampled);
  CHECK(config.run.eval.n_mu == 18445);
  CHECK(config.run.eval.n_g == 18445);
}

TEST_CASE("initial theta depends only on the init seed") {
  const std::vector<double> a = initial_theta(12, 42);
  const std::vector<double> b = initial_theta(12, 42);
  CHECK(a == b);
  for (double v : a) {
    CHECK(v >= 0.0);
    CHECK(v < 2.0 * 3.14159265358979323846);
  }
  CHECK(initial_theta(12, 43) != a);
}

TEST_CASE("train_run writes traces, summary and reproduces bitwise") {
  const auto out_a = fresh_dir("qgsa_bench_a");
  const auto out_b = fresh_dir("qgsa_bench_b");
  const RunConfig config = RunConfig::from_json_text(tiny_config("tiny", "qgsa_practical"));

  const TrainResult first = train_run(config, out_a, true);
  REQUIRE(first.trace_files.size() == 2);
  CHECK(std::filesystem::exists(first.summary_file));
  REQUIRE(first.plot_files.size() == 2);
  for (const auto& plot : first.plot_files) {
    const std::string svg = read_file(plot);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
  }

  const TrainResult second = train_run(config, out_b, true);
  for (std::size_t i = 0; i < first.trace_files.size(); ++i) {
    CHECK(read_file(first.trace_files[i]) == read_file(second.trace_files[i]));
  }
  CHECK(read_file(first.summary_file) == read_file(second.summary_file));

  std::filesystem::remove_all(out_a);
  std::filesystem::remove_all(out_b);
}

TEST_CASE("a parallel seed fan-out produces the same artifacts") {
  const auto serial_dir = fresh_dir("qgsa_bench_serial");
  const auto parallel_dir = fresh_dir("qgsa_bench_parallel");
  nlohmann::json doc = nlohmann::json::parse(tiny_config("fanout", "qgsa_practical"));
  doc["seeds"] = {1, 2, 3, 4, 5};
  const RunConfig config = RunConfig::from_json_text(doc.dump());

  setenv("QGSA_WORKERS", "1", 1);
  const TrainResult serial = train_run(config, serial_dir, false);
  setenv("QGSA_WORKERS", "4", 1);
  const TrainResult parallel = train_run(config, parallel_dir, false);
  unsetenv("QGSA_WORKERS");

  REQUIRE(serial.trace_files.size() == parallel.trace_files.size());
  for (std::size_t i = 0; i < serial.trace_files.size(); ++i) {
    CHECK(read_file(serial.trace_files[i]) == read_file(parallel.trace_files[i]));
  }
  CHECK(read_file(serial.summary_file) == read_file(parallel.summary_file));
  std::filesystem::remove_all(serial_dir);
  std::filesystem::remove_all(parallel_dir);
}

TEST_CASE("trace header and GD circuit column follow the contract") {
  const auto out = fresh_dir("qgsa_bench_gd");
  const RunConfig config = RunConfig::from_json_text(tiny_config("gdrun", "gd"));
  const TrainResult result = train_run(config, out, false);

  const std::string csv = read_file(result.trace_files[0]);
  CHECK(csv.rfind("t,loss,circuits,shots,cost,alpha,accepted,sign\n", 0) == 0);

  // k = 2, n = 10 examples: 2k n = 40 circuits per iteration, exactly.
  const auto rows = read_trace_csv(result.trace_files[0]);
  REQUIRE(rows.size() == 4);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    CHECK(rows[t].t == t);
    CHECK(rows[t].circuits == 40 * t);
    CHECK(rows[t].cost == doctest::Approx(0.3 * 40.0 * t + 0.01 * 4000.0 * t).epsilon(1e-12));
  }
  std::filesystem::remove_all(out);
}

TEST_CASE("qgsa trace circuits stay within three evaluations per iteration") {
  const auto out = fresh_dir("qgsa_bench_qg");
  const RunConfig config = RunConfig::from_json_text(tiny_config("qgrun", "qgsa_practical"));
  const TrainResult result = train_run(config, out, false);
  const auto rows = read_trace_csv(result.trace_files[0]);
  for (std::size_t t = 1; t < rows.size(); ++t) {
    const std::uint64_t delta = rows[t].circuits - rows[t - 1].circuits;
    CHECK(delta >= 20);  // 2 evaluations x 10 examples
    CHECK(delta <= 30);  // 3 evaluations x 10 examples
  }
  std::filesystem::remove_all(out);
}

TEST_CASE("summary statistics recompute from the trace files") {
  const auto out = fresh_dir("qgsa_bench_sum");
  const RunConfig config = RunConfig::from_json_text(tiny_config("sumrun", "qgsa_practical"));
  const TrainResult result = train_run(config, out, false);

  const nlohmann::json summary = nlohmann::json::parse(read_file(result.summary_file));
  std::vector<double> finals;
  std::uint64_t circuits = 0;
  std::uint64_t shots = 0;
  for (const auto& trace_file : result.trace_files) {
    const auto rows = read_trace_csv(trace_file);
    finals.push_back(rows.back().loss);
    circuits += rows.back().circuits;
    shots += rows.back().shots;
  }
  double mean = 0.0;
  for (double f : finals) {
    mean += f;
  }
  mean /= static_cast<double>(finals.size());
  double variance = 0.0;
  for (double f : finals) {
    variance += (f - mean) * (f - mean);
  }
  const double stddev = std::sqrt(variance / static_cast<double>(finals.size()));

  CHECK(std::abs(summary["final_loss"]["mean"].get<double>() - mean) <= 1e-12);
  CHECK(std::abs(summary["final_loss"]["std"].get<double>() - stddev) <= 1e-12);
  CHECK(summary["totals"]["circuits"].get<std::uint64_t>() == circuits);
  CHECK(summary["totals"]["shots"].get<std::uint64_t>() == shots);
  CHECK(summary["k"].get<int>() == 2);
  CHECK(summary["n_examples"].get<int>() == 10);
  std::filesystem::remove_all(out);
}

TEST_CASE("compare_runs tabulates and charts completed runs") {
  const auto out = fresh_dir("qgsa_bench_cmp");
  train_run(RunConfig::from_json_text(tiny_config("cmp-gd", "gd")), out, false);
  train_run(RunConfig::from_json_text(tiny_config("cmp-qgsa", "qgsa_practical")), out, false);

  const CompareResult result = compare_runs(out, out);
  CHECK(std::filesystem::exists(result.table_csv));
  CHECK(std::filesystem::exists(result.report_json));
  REQUIRE(result.plot_files.size() == 1);
  CHECK(read_file(result.plot_files[0]).find("<svg") != std::string::npos);
  CHECK(result.rendered_table.find("cmp-gd") != std::string::npos);
  CHECK(result.rendered_table.find("cmp-qgsa") != std::string::npos);

  const nlohmann::json report = nlohmann::json::parse(read_file(result.report_json));
  REQUIRE(report.size() == 2);
  // Rows sort by (dataset, loss, optimizer): gd first.
  CHECK(report[0]["optimizer"] == "gd");
  CHECK(report[1]["optimizer"] == "qgsa_practical");
  const double gd_update = report[0]["update_circuits"].get<double>();
  const double qgsa_update = report[1]["update_circuits"].get<double>();
  const double ratio = std::stod(report[1]["update_ratio_vs_gd"].get<std::string>());
  CHECK(ratio == doctest::Approx(qgsa_update / gd_update).epsilon(1e-12));
  CHECK(report[0]["update_ratio_vs_gd"] == "1");
  // Four cost columns, one per builtin tariff.
  CHECK(report[0]["cost_usd"].size() == 4);
  std::filesystem::remove_all(out);
}

TEST_CASE("compare_runs needs at least two summaries") {
  const auto out = fresh_dir("qgsa_bench_single");
  train_run(RunConfig::from_json_text(tiny_config("only", "gd")), out, false);
  CHECK_THROWS_AS(compare_runs(out, out), std::runtime_error);
  CHECK_THROWS_AS(compare_runs(out / "missing", out), std::runtime_error);
  std::filesystem::remove_all(out);
}

TEST_CASE("iris config end to end") {
  const auto out = fresh_dir("qgsa_bench_iris");
  const std::string text = R"({
    "name": "iris-smoke",
    "dataset": {"type": "iris", "path": "data/iris.csv",
                 "classes": ["setosa", "versicolor"]},
    "layers": 3,
    "loss": "qh",
    "risk": "mean",
    "optimizer": "qgsa_practical",
    "hyperparameters": {"alpha": 0.1},
    "iterations": 2,
    "seeds": [7],
    "init_seed": 5,
    "evaluator": {"mode": "exact"}
  })";
  const RunConfig config = RunConfig::from_json_text(text);
  const BenchProblem bench_problem = make_problem(config);
  CHECK(bench_problem.param_count == 12);
  CHECK(bench_problem.n_examples == 100);
  CHECK(bench_problem.dataset_name == "iris");

  const TrainResult result = train_run(config, out, false);
  const auto rows = read_trace_csv(result.trace_files[0]);
  CHECK(rows.size() == 3);
  std::filesystem::remove_all(out);
}
