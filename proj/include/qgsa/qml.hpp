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
#include <span>
#include <string>
#include <vector>

#include "qgsa/gradients.hpp"
#include "qgsa/observable.hpp"
#include "qgsa/statevector.hpp"

namespace qgsa {

/// Labelled feature matrix. Features are angles in [0, pi] after scaling;
/// labels are +1 / -1.
class Dataset {
 public:
  Dataset(std::size_t feature_count, std::string name);

  void add_row(std::span<const double> features, int label);

  std::size_t size() const { return labels_.size(); }
  std::size_t feature_count() const { return d_; }
  std::span<const double> row(std::size_t i) const;
  int label(std::size_t i) const { return labels_[i]; }
  const std::string& name() const { return name_; }

  /// Min-max scales each column to [0, pi]; a constant column maps to 0.
  /// Idempotent once the extremes sit at 0 and pi.
  void scale_features();

 private:
  std::size_t d_;
  std::string name_;
  std::vector<double> features_;  // row-major
  std::vector<int> labels_;
};

/// Iris CSV: sepal_length, sepal_width, petal_length, petal_width, class
/// (header optional). Keeps the two named classes, labels them +1 / -1 in
/// order, and scales features to [0, pi].
Dataset load_iris(const std::filesystem::path& path, const std::string& class_pos,
                  const std::string& class_neg);

/// Generic CSV of d numeric columns plus a final +1/-1 integer label column;
/// features are scaled to [0, pi].
Dataset load_feature_csv(const std::filesystem::path& path);

/// Seeded stand-in for a precomputed image-feature set: two Gaussian blobs in
/// [0, pi]^d (means two sigma apart per coordinate, clipped), n_per_class
/// rows per label.
Dataset synth_crack(std::size_t n_per_class, std::size_t d, std::uint64_t seed);

/// Data encoder plus trainable ansatz plus readout observable.
/// The encoder puts H on each of the d qubits followed by a constant RZ of
/// the feature value; the ansatz stacks `layers` blocks of one RX slot per
/// qubit and a CX ring; the readout is <Z> on qubit 0.
struct ClassifierModel {
  int n_qubits = 0;
  int layers = 0;
  ParamCircuit ansatz;
  Observable readout;

  int param_count() const { return ansatz.param_count(); }

  /// Full per-example circuit: encoder gates for `x`, then the ansatz.
  ParamCircuit circuit_for(std::span<const double> x) const;
};

/// d features on d qubits; requires d >= 2 (the CX ring needs two qubits).
/// Parameter count is layers * d.
ClassifierModel build_model(int feature_count, int layers);

/// h_theta(x): readout expectation of the encoded-and-evolved state.
/// Charges one circuit per readout term.
double predict(const ClassifierModel& model, std::span<const double> theta,
               std::span<const double> x, const Evaluator& evaluator, LedgerDelta& delta);

enum class LossKind { kMse, kQuantumHinge };

/// (1 - y*h) / 2, in [0, 1] for h in [-1, 1].
double loss_qh(double h, int y);

/// (h - y)^2.
double loss_mse(double h, int y);

double loss_value(LossKind kind, double h, int y);

/// d loss / d h.
double loss_derivative(LossKind kind, double h, int y);

struct RiskValue {
  double value = 0.0;
  LedgerDelta delta;
};

/// Empirical risk sum_i loss(h_theta(x_i), y_i); divides by the example count
/// when `mean_normalize` is set. One circuit per example per readout term.
RiskValue empirical_risk(const ClassifierModel& model, std::span<const double> theta,
                         const Dataset& data, LossKind loss, const Evaluator& evaluator,
                         bool mean_normalize = false);

}  // namespace qgsa
