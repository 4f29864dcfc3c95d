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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "bench_internal.hpp"
#include "qgsa/bench.hpp"
#include "svg_chart.hpp"
#include "text_format.hpp"

namespace qgsa::bench {

using nlohmann::ordered_json;
using qgsa::detail::double_str;

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

std::string render_trace_csv(const OptimizerTrace& trace, const PricingProfile& pricing) {
  std::string csv = "t,loss,circuits,shots,cost,alpha,accepted,sign\n";
  for (const IterationRecord& record : trace.records) {
    const double usd = static_cast<double>(record.circuits) * pricing.per_circuit +
                       static_cast<double>(record.shots) * pricing.per_shot;
    csv += std::to_string(record.t);
    csv += ',';
    csv += double_str(record.loss);
    csv += ',';
    csv += std::to_string(record.circuits);
    csv += ',';
    csv += std::to_string(record.shots);
    csv += ',';
    csv += double_str(usd);
    csv += ',';
    csv += double_str(record.alpha);
    csv += ',';
    csv += record.accepted ? '1' : '0';
    csv += ',';
    csv += std::to_string(record.direction_sign);
    csv += '\n';
  }
  return csv;
}

namespace {

double mean_of(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) {
    total += v;
  }
  return total / static_cast<double>(values.size());
}

// Population standard deviation.
double std_of(const std::vector<double>& values) {
  const double mean = mean_of(values);
  double total = 0.0;
  for (double v : values) {
    total += (v - mean) * (v - mean);
  }
  return std::sqrt(total / static_cast<double>(values.size()));
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::vector<OptimizerTrace> run_all_seeds(const RunConfig& config, const Problem& problem,
                                          const std::vector<double>& theta0) {
  std::vector<OptimizerTrace> traces(config.seeds.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < config.seeds.size();) {
      try {
        traces[i] = run_optimizer(config.run, problem, theta0, config.seeds[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
        return;
      }
    }
  };

  // Bounded pool; QGSA_WORKERS overrides the hardware default. Outputs are
  // keyed by seed index, so the worker count never changes any artifact.
  std::size_t pool_limit = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QGSA_WORKERS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0 && parsed <= 64) {
      pool_limit = static_cast<std::size_t>(parsed);
    }
  }
  const std::size_t n_workers = std::min(config.seeds.size(), pool_limit);
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      pool.emplace_back(work);
    }
    for (std::thread& worker : pool) {
      worker.join();
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
  return traces;
}

ordered_json summary_json(const RunConfig& config, const BenchProblem& bench,
                          const std::vector<OptimizerTrace>& traces) {
  std::vector<double> finals;
  ExecutionLedger totals;
  std::uint64_t update_circuits = 0;
  ordered_json per_seed = ordered_json::array();
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const OptimizerTrace& trace = traces[i];
    const IterationRecord& last = trace.records.back();
    finals.push_back(last.loss);
    totals.record("run", trace.ledger.circuits(), trace.ledger.shots());
    update_circuits += last.update_circuits;
    per_seed.push_back({{"seed", config.seeds[i]},
                        {"final_loss", last.loss},
                        {"iterations_run", last.t},
                        {"circuits", trace.ledger.circuits()},
                        {"shots", trace.ledger.shots()},
                        {"update_circuits", last.update_circuits},
                        {"cost_usd", cost(trace.ledger, config.pricing)},
                        {"termination", trace.termination_reason}});
  }

  ordered_json doc;
  doc["name"] = config.name;
  doc["optimizer"] = optimizer_name(config.run.optimizer);
  doc["dataset"] = bench.dataset_name;
  doc["loss"] = loss_name(config.loss);
  doc["risk"] = config.mean_risk ? "mean" : "sum";
  doc["k"] = bench.param_count;
  doc["n_examples"] = bench.n_examples;
  doc["iterations"] = config.run.iterations;
  doc["init_seed"] = config.init_seed;
  doc["seeds"] = config.seeds;
  doc["evaluator"] = {{"mode", config.run.eval.sampled ? "sampled" : "exact"},
                      {"n_mu", config.run.eval.n_mu},
                      {"n_g", config.run.eval.n_g}};
  doc["pricing_profile"] = {{"name", config.pricing.name},
                            {"per_circuit", config.pricing.per_circuit},
                            {"per_shot", config.pricing.per_shot}};
  doc["final_loss"] = {{"per_seed", finals},
                       {"mean", mean_of(finals)},
                       {"std", std_of(finals)},
                       {"median", median_of(finals)}};
  doc["totals"] = {{"circuits", totals.circuits()},
                   {"shots", totals.shots()},
                   {"update_circuits", update_circuits},
                   {"cost_usd", cost(totals, config.pricing)}};
  doc["per_seed"] = std::move(per_seed);
  return doc;
}

std::vector<ChartSeries> loss_series(const RunConfig& config,
                                     const std::vector<OptimizerTrace>& traces,
                                     bool vs_circuits) {
  std::vector<ChartSeries> series;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    ChartSeries s;
    s.label = "seed " + std::to_string(config.seeds[i]);
    for (const IterationRecord& record : traces[i].records) {
      const double x =
          vs_circuits ? static_cast<double>(record.circuits) : static_cast<double>(record.t);
      s.points.emplace_back(x, record.loss);
    }
    series.push_back(std::move(s));
  }
  return series;
}

}  // namespace

TrainResult train_run(const RunConfig& config, const std::filesystem::path& out_dir,
                      bool write_plots) {
  const BenchProblem bench = make_problem(config);
  const std::vector<double> theta0 = initial_theta(bench.param_count, config.init_seed);
  const std::vector<OptimizerTrace> traces = run_all_seeds(config, *bench.problem, theta0);

  TrainResult result;
  result.run_dir = out_dir / config.name;
  std::filesystem::create_directories(result.run_dir);

  for (std::size_t i = 0; i < traces.size(); ++i) {
    const std::filesystem::path trace_path =
        result.run_dir / ("trace_seed" + std::to_string(config.seeds[i]) + ".csv");
    write_text_file(trace_path, render_trace_csv(traces[i], config.pricing));
    result.trace_files.push_back(trace_path);
  }

  result.summary_file = result.run_dir / "summary.json";
  write_text_file(result.summary_file, summary_json(config, bench, traces).dump(2) + "\n");

  if (write_plots) {
    const std::string title = config.name + " (" + bench.dataset_name + ", " +
                              loss_name(config.loss) + ", " +
                              optimizer_name(config.run.optimizer) + ")";
    const std::filesystem::path by_iter = result.run_dir / "loss_vs_iteration.svg";
    write_text_file(by_iter, render_line_chart(title, "iteration", "training loss",
                                               loss_series(config, traces, false)));
    result.plot_files.push_back(by_iter);
    const std::filesystem::path by_circ = result.run_dir / "loss_vs_circuits.svg";
    write_text_file(by_circ, render_line_chart(title, "cumulative circuits", "training loss",
                                               loss_series(config, traces, true)));
    result.plot_files.push_back(by_circ);
  }
  return result;
}

}  // namespace qgsa::bench
