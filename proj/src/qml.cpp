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

#include "qgsa/qml.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qgsa {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream in(line);
  while (std::getline(in, field, ',')) {
    // Trim surrounding whitespace.
    const auto begin = field.find_first_not_of(" \t\r");
    const auto end = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos ? std::string()
                                                : field.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) {
    return false;
  }
  errno = 0;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && errno != ERANGE && std::isfinite(out);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!line.empty()) {
      lines.push_back(line);
    }
  }
  return lines;
}

}  // namespace

Dataset::Dataset(std::size_t feature_count, std::string name)
    : d_(feature_count), name_(std::move(name)) {
  if (d_ == 0) {
    throw std::invalid_argument("dataset needs at least one feature column");
  }
}

void Dataset::add_row(std::span<const double> features, int label) {
  if (features.size() != d_) {
    throw std::invalid_argument("row has " + std::to_string(features.size()) +
                                " features, dataset expects " + std::to_string(d_));
  }
  if (label != 1 && label != -1) {
    throw std::invalid_argument("label must be +1 or -1");
  }
  features_.insert(features_.end(), features.begin(), features.end());
  labels_.push_back(label);
}

std::span<const double> Dataset::row(std::size_t i) const {
  return {features_.data() + i * d_, d_};
}

void Dataset::scale_features() {
  if (labels_.empty()) {
    return;
  }
  for (std::size_t col = 0; col < d_; ++col) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < labels_.size(); ++r) {
      lo = std::min(lo, features_[r * d_ + col]);
      hi = std::max(hi, features_[r * d_ + col]);
    }
    for (std::size_t r = 0; r < labels_.size(); ++r) {
      double& value = features_[r * d_ + col];
      value = hi > lo ? (value - lo) / (hi - lo) * kPi : 0.0;
    }
  }
}

Dataset load_iris(const std::filesystem::path& path, const std::string& class_pos,
                  const std::string& class_neg) {
  const std::vector<std::string> lines = read_lines(path);
  Dataset data(4, "iris");
  bool saw_pos = false;
  bool saw_neg = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::vector<std::string> fields = split_csv_line(lines[i]);
    if (fields.size() != 5) {
      throw std::runtime_error(path.string() + ": line " + std::to_string(i + 1) +
                               " has " + std::to_string(fields.size()) + " fields, expected 5");
    }
    double probe = 0.0;
    if (i == 0 && !parse_double(fields[0], probe)) {
      continue;  // header row
    }
    const std::string& label = fields[4];
    if (label != class_pos && label != class_neg) {
      continue;
    }
    double row[4];
    for (int col = 0; col < 4; ++col) {
      if (!parse_double(fields[col], row[col])) {
        throw std::runtime_error(path.string() + ": line " + std::to_string(i + 1) +
                                 ": non-numeric feature '" + fields[col] + "'");
      }
    }
    saw_pos = saw_pos || label == class_pos;
    saw_neg = saw_neg || label == class_neg;
    data.add_row(row, label == class_pos ? +1 : -1);
  }
  if (!saw_pos) {
    throw std::runtime_error("class '" + class_pos + "' not present in " + path.string());
  }
  if (!saw_neg) {
    throw std::runtime_error("class '" + class_neg + "' not present in " + path.string());
  }
  data.scale_features();
  return data;
}

Dataset load_feature_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) {
    throw std::runtime_error(path.string() + " holds no data rows");
  }
  std::size_t width = split_csv_line(lines.front()).size();
  if (width < 2) {
    throw std::runtime_error(path.string() + ": need at least one feature and a label column");
  }
  Dataset data(width - 1, path.stem().string());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::vector<std::string> fields = split_csv_line(lines[i]);
    if (fields.size() != width) {
      throw std::runtime_error(path.string() + ": line " + std::to_string(i + 1) +
                               " has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(width));
    }
    double probe = 0.0;
    if (i == 0 && !parse_double(fields[0], probe)) {
      continue;  // header row
    }
    std::vector<double> row(width - 1);
    for (std::size_t col = 0; col + 1 < width; ++col) {
      if (!parse_double(fields[col], row[col])) {
        throw std::runtime_error(path.string() + ": line " + std::to_string(i + 1) +
                                 ": non-numeric feature '" + fields[col] + "'");
      }
    }
    double label = 0.0;
    if (!parse_double(fields[width - 1], label) || (label != 1.0 && label != -1.0)) {
      throw std::runtime_error(path.string() + ": line " + std::to_string(i + 1) +
                               ": label must be +1 or -1, got '" + fields[width - 1] + "'");
    }
    data.add_row(row, static_cast<int>(label));
  }
  if (data.size() == 0) {
    throw std::runtime_error(path.string() + " holds no data rows");
  }
  data.scale_features();
  return data;
}

Dataset synth_crack(std::size_t n_per_class, std::size_t d, std::uint64_t seed) {
  if (n_per_class == 0) {
    throw std::invalid_argument("n_per_class must be positive");
  }
  if (d < 2 || d > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("feature count must be in [2, " + std::to_string(kMaxQubits) +
                                "]");
  }
  // Two isotropic blobs with per-coordinate means two sigma apart.
  const double sigma = kPi / 8.0;
  const double mean_pos = kPi / 2.0 + sigma;
  const double mean_neg = kPi / 2.0 - sigma;
  Rng rng(seed);
  Dataset data(d, "synth_crack");
  std::vector<double> row(d);
  for (int label : {+1, -1}) {
    const double mean = label > 0 ? mean_pos : mean_neg;
    for (std::size_t i = 0; i < n_per_class; ++i) {
      for (std::size_t col = 0; col < d; ++col) {
        row[col] = std::clamp(mean + sigma * rng.normal(), 0.0, kPi);
      }
      data.add_row(row, label);
    }
  }
  return data;
}

ParamCircuit ClassifierModel::circuit_for(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(n_qubits)) {
    throw std::invalid_argument("feature vector has " + std::to_string(x.size()) +
                                " entries, model expects " + std::to_string(n_qubits));
  }
  ParamCircuit circuit(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    circuit.add(Gate::h(q));
    circuit.add(Gate::rz_const(q, x[q]));
  }
  for (const Gate& gate : ansatz.gates()) {
    circuit.add(gate);
  }
  return circuit;
}

ClassifierModel build_model(int feature_count, int layers) {
  if (feature_count < 2) {
    throw std::invalid_argument("the entangling ring needs at least two qubits");
  }
  if (feature_count > kMaxQubits) {
    throw std::invalid_argument("feature count exceeds the qubit cap");
  }
  if (layers < 1) {
    throw std::invalid_argument("layer count must be positive");
  }
  ParamCircuit ansatz(feature_count);
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 0; q < feature_count; ++q) {
      ansatz.add(Gate::rx(q, layer * feature_count + q));
    }
    for (int q = 0; q + 1 < feature_count; ++q) {
      ansatz.add(Gate::cx(q, q + 1));
    }
    ansatz.add(Gate::cx(feature_count - 1, 0));
  }
  std::string readout_letters(feature_count, 'I');
  readout_letters[0] = 'Z';
  return {feature_count, layers, std::move(ansatz),
          Observable(feature_count, {{1.0, readout_letters}})};
}

double predict(const ClassifierModel& model, std::span<const double> theta,
               std::span<const double> x, const Evaluator& evaluator, LedgerDelta& delta) {
  const ParamCircuit circuit = model.circuit_for(x);
  return evaluator.measure(model.readout, run_circuit(circuit, theta), delta);
}

double loss_qh(double h, int y) {
  if (y != 1 && y != -1) {
    throw std::invalid_argument("label must be +1 or -1");
  }
  return (1.0 - static_cast<double>(y) * h) / 2.0;
}

double loss_mse(double h, int y) {
  if (y != 1 && y != -1) {
    throw std::invalid_argument("label must be +1 or -1");
  }
  const double diff = h - static_cast<double>(y);
  return diff * diff;
}

double loss_value(LossKind kind, double h, int y) {
  return kind == LossKind::kQuantumHinge ? loss_qh(h, y) : loss_mse(h, y);
}

double loss_derivative(LossKind kind, double h, int y) {
  if (y != 1 && y != -1) {
    throw std::invalid_argument("label must be +1 or -1");
  }
  if (kind == LossKind::kQuantumHinge) {
    return -static_cast<double>(y) / 2.0;
  }
  return 2.0 * (h - static_cast<double>(y));
}

RiskValue empirical_risk(const ClassifierModel& model, std::span<const double> theta,
                         const Dataset& data, LossKind loss, const Evaluator& evaluator,
                         bool mean_normalize) {
  if (data.size() == 0) {
    throw std::invalid_argument("empirical risk over an empty dataset");
  }
  RiskValue risk;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double h = predict(model, theta, data.row(i), evaluator, risk.delta);
    risk.value += loss_value(loss, h, data.label(i));
  }
  if (mean_normalize) {
    risk.value /= static_cast<double>(data.size());
  }
  return risk;
}

}  // namespace qgsa
