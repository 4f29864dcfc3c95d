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
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "bench_internal.hpp"
#include "qgsa/bench.hpp"
#include "svg_chart.hpp"
#include "text_format.hpp"

namespace qgsa::bench {

using nlohmann::json;
using nlohmann::ordered_json;
using qgsa::detail::double_str;

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace " + path.string());
  }
  std::vector<TraceRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (header) {
      header = false;
      continue;
    }
    std::stringstream fields(line);
    std::string field;
    std::vector<std::string> parts;
    while (std::getline(fields, field, ',')) {
      parts.push_back(field);
    }
    if (parts.size() != 8) {
      throw std::runtime_error(path.string() + ": malformed trace row '" + line + "'");
    }
    TraceRow row;
    row.t = std::strtoull(parts[0].c_str(), nullptr, 10);
    row.loss = std::strtod(parts[1].c_str(), nullptr);
    row.circuits = std::strtoull(parts[2].c_str(), nullptr, 10);
    row.shots = std::strtoull(parts[3].c_str(), nullptr, 10);
    row.cost = std::strtod(parts[4].c_str(), nullptr);
    row.alpha = std::strtod(parts[5].c_str(), nullptr);
    row.accepted = parts[6] == "1";
    row.sign = static_cast<int>(std::strtol(parts[7].c_str(), nullptr, 10));
    rows.push_back(row);
  }
  if (rows.empty()) {
    throw std::runtime_error(path.string() + " holds no rows");
  }
  return rows;
}

namespace {

struct RunSummary {
  std::filesystem::path dir;
  std::string name;
  std::string optimizer;
  std::string dataset;
  std::string loss;
  double mean_final = 0.0;
  double median_final = 0.0;
  std::uint64_t circuits = 0;
  std::uint64_t shots = 0;
  std::uint64_t update_circuits = 0;
};

RunSummary read_summary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  try {
    RunSummary summary;
    summary.dir = path.parent_path();
    summary.name = doc.at("name").get<std::string>();
    summary.optimizer = doc.at("optimizer").get<std::string>();
    summary.dataset = doc.at("dataset").get<std::string>();
    summary.loss = doc.at("loss").get<std::string>();
    summary.mean_final = doc.at("final_loss").at("mean").get<double>();
    summary.median_final = doc.at("final_loss").at("median").get<double>();
    summary.circuits = doc.at("totals").at("circuits").get<std::uint64_t>();
    summary.shots = doc.at("totals").at("shots").get<std::uint64_t>();
    summary.update_circuits = doc.at("totals").at("update_circuits").get<std::uint64_t>();
    return summary;
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": missing summary field: " + e.what());
  }
}

// Mean loss across all seed traces of a run at each iteration index, plotted
// against the mean cumulative circuit count.
ChartSeries mean_curve(const RunSummary& run) {
  std::vector<std::vector<TraceRow>> traces;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(run.dir)) {
    const std::string file = entry.path().filename().string();
    if (file.starts_with("trace_seed") && file.ends_with(".csv")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    traces.push_back(read_trace_csv(file));
  }
  ChartSeries series;
  series.label = run.name;
  if (traces.empty()) {
    return series;
  }
  std::size_t longest = 0;
  for (const auto& trace : traces) {
    longest = std::max(longest, trace.size());
  }
  for (std::size_t t = 0; t < longest; ++t) {
    double loss = 0.0;
    double circuits = 0.0;
    std::size_t present = 0;
    for (const auto& trace : traces) {
      if (t < trace.size()) {
        loss += trace[t].loss;
        circuits += static_cast<double>(trace[t].circuits);
        ++present;
      }
    }
    series.points.emplace_back(circuits / static_cast<double>(present),
                               loss / static_cast<double>(present));
  }
  return series;
}

std::string ratio_text(std::uint64_t numerator, const RunSummary* gd_run, bool update) {
  if (gd_run == nullptr) {
    return "n/a";
  }
  const std::uint64_t denominator = update ? gd_run->update_circuits : gd_run->circuits;
  if (denominator == 0) {
    return "n/a";
  }
  return double_str(static_cast<double>(numerator) / static_cast<double>(denominator));
}

std::string pad(const std::string& text, std::size_t width) {
  // Keep at least two spaces between columns even when the text overflows.
  return text.size() + 2 >= width ? text + "  " : text + std::string(width - text.size(), ' ');
}

// Compact display form for the rendered table; the CSV and JSON keep the
// full-precision values.
std::string short_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", value);
  return buffer;
}

}  // namespace

CompareResult compare_runs(const std::filesystem::path& runs_dir,
                           const std::filesystem::path& out_dir) {
  if (!std::filesystem::is_directory(runs_dir)) {
    throw std::runtime_error(runs_dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> summary_files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(runs_dir)) {
    if (entry.is_regular_file() && entry.path().filename() == "summary.json") {
      summary_files.push_back(entry.path());
    }
  }
  std::sort(summary_files.begin(), summary_files.end());
  if (summary_files.size() < 2) {
    throw std::runtime_error("need at least two completed run summaries under " +
                             runs_dir.string() + ", found " +
                             std::to_string(summary_files.size()));
  }

  std::vector<RunSummary> runs;
  for (const auto& file : summary_files) {
    runs.push_back(read_summary(file));
  }
  std::sort(runs.begin(), runs.end(), [](const RunSummary& a, const RunSummary& b) {
    return std::tie(a.dataset, a.loss, a.optimizer, a.name) <
           std::tie(b.dataset, b.loss, b.optimizer, b.name);
  });

  // The GD baseline per (dataset, loss) group, when present.
  std::map<std::pair<std::string, std::string>, const RunSummary*> gd_baseline;
  for (const RunSummary& run : runs) {
    if (run.optimizer == "gd") {
      gd_baseline[{run.dataset, run.loss}] = &run;
    }
  }

  CompareResult result;
  std::filesystem::create_directories(out_dir);

  ordered_json report = ordered_json::array();
  std::string csv =
      "name,optimizer,dataset,loss,mean_final_loss,median_final_loss,circuits,update_circuits,"
      "shots";
  for (const PricingProfile& profile : builtin_profiles()) {
    std::string column = profile.name;
    std::replace(column.begin(), column.end(), ' ', '_');
    std::replace(column.begin(), column.end(), '-', '_');
    csv += ",cost_" + column;
  }
  csv += ",update_ratio_vs_gd,total_ratio_vs_gd\n";

  std::vector<std::string> table_lines;
  table_lines.push_back(pad("name", 28) + pad("optimizer", 16) + pad("dataset", 14) +
                        pad("loss", 6) + pad("mean final", 14) + pad("circuits", 12) +
                        pad("update", 12) + pad("vs GD", 10));

  for (const RunSummary& run : runs) {
    const auto group = gd_baseline.find({run.dataset, run.loss});
    const RunSummary* gd_run = group == gd_baseline.end() ? nullptr : group->second;

    ordered_json row;
    row["name"] = run.name;
    row["optimizer"] = run.optimizer;
    row["dataset"] = run.dataset;
    row["loss"] = run.loss;
    row["mean_final_loss"] = run.mean_final;
    row["median_final_loss"] = run.median_final;
    row["circuits"] = run.circuits;
    row["update_circuits"] = run.update_circuits;
    row["shots"] = run.shots;
    ordered_json costs;
    for (const PricingProfile& profile : builtin_profiles()) {
      costs[profile.name] = static_cast<double>(run.circuits) * profile.per_circuit +
                            static_cast<double>(run.shots) * profile.per_shot;
    }
    row["cost_usd"] = std::move(costs);
    const std::string update_ratio = ratio_text(run.update_circuits, gd_run, true);
    const std::string total_ratio = ratio_text(run.circuits, gd_run, false);
    row["update_ratio_vs_gd"] = update_ratio;
    row["total_ratio_vs_gd"] = total_ratio;
    report.push_back(row);

    csv += run.name + ',' + run.optimizer + ',' + run.dataset + ',' + run.loss + ',' +
           double_str(run.mean_final) + ',' + double_str(run.median_final) + ',' +
           std::to_string(run.circuits) + ',' + std::to_string(run.update_circuits) + ',' +
           std::to_string(run.shots);
    for (const PricingProfile& profile : builtin_profiles()) {
      csv += ',' + double_str(static_cast<double>(run.circuits) * profile.per_circuit +
                              static_cast<double>(run.shots) * profile.per_shot);
    }
    csv += ',' + update_ratio + ',' + total_ratio + '\n';

    table_lines.push_back(pad(run.name, 28) + pad(run.optimizer, 16) + pad(run.dataset, 14) +
                          pad(run.loss, 6) + pad(short_double(run.mean_final), 14) +
                          pad(std::to_string(run.circuits), 12) +
                          pad(std::to_string(run.update_circuits), 12) +
                          pad(gd_run == nullptr || gd_run->update_circuits == 0
                                  ? update_ratio
                                  : short_double(static_cast<double>(run.update_circuits) /
                                                 static_cast<double>(gd_run->update_circuits)),
                              10));
  }

  result.table_csv = out_dir / "compare.csv";
  write_text_file(result.table_csv, csv);
  result.report_json = out_dir / "compare.json";
  write_text_file(result.report_json, report.dump(2) + "\n");

  // One overlaid chart per (dataset, loss) group.
  std::map<std::pair<std::string, std::string>, std::vector<ChartSeries>> groups;
  for (const RunSummary& run : runs) {
    groups[{run.dataset, run.loss}].push_back(mean_curve(run));
  }
  for (const auto& [key, series] : groups) {
    const std::filesystem::path path =
        out_dir / ("compare_" + key.first + "_" + key.second + ".svg");
    write_text_file(path, render_line_chart("training loss: " + key.first + " / " + key.second,
                                            "cumulative circuits", "mean training loss",
                                            series));
    result.plot_files.push_back(path);
  }

  for (const std::string& line : table_lines) {
    result.rendered_table += line + '\n';
  }
  return result;
}

}  // namespace qgsa::bench
