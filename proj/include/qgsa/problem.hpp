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
#include <memory>
#include <span>
#include <vector>

#include "qgsa/gradients.hpp"
#include "qgsa/observable.hpp"
#include "qgsa/qml.hpp"
#include "qgsa/statevector.hpp"

namespace qgsa {

/// Scalar objective seen by the optimizers. `evaluate` and `shifted_partial`
/// are what the algorithm would execute on hardware and charge the ledger;
/// `exact_value` / `exact_gradient` are free simulator diagnostics (also used
/// as the ideal-variant gradient oracle).
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::size_t param_count() const = 0;

  /// Circuit executions charged by one objective evaluation.
  virtual std::uint64_t circuits_per_eval() const = 0;

  virtual double evaluate(std::span<const double> theta, const Evaluator& evaluator,
                          LedgerDelta& delta) const = 0;

  virtual double exact_value(std::span<const double> theta) const = 0;

  virtual GradientVector exact_gradient(std::span<const double> theta) const = 0;

  /// Parameter-shift partial derivative of the objective, charged.
  virtual double shifted_partial(std::span<const double> theta, std::size_t index,
                                 const Evaluator& evaluator, LedgerDelta& delta) const = 0;

  /// Conservative Lipschitz smoothness bound for the objective.
  virtual double default_smoothness() const = 0;
};

/// <H> of a parameterized circuit.
class ExpectationProblem final : public Problem {
 public:
  ExpectationProblem(ParamCircuit circuit, Observable obs);

  std::size_t param_count() const override;
  std::uint64_t circuits_per_eval() const override;
  double evaluate(std::span<const double> theta, const Evaluator& evaluator,
                  LedgerDelta& delta) const override;
  double exact_value(std::span<const double> theta) const override;
  GradientVector exact_gradient(std::span<const double> theta) const override;
  double shifted_partial(std::span<const double> theta, std::size_t index,
                         const Evaluator& evaluator, LedgerDelta& delta) const override;
  double default_smoothness() const override;

  const ParamCircuit& circuit() const { return circuit_; }
  const Observable& observable() const { return obs_; }

 private:
  ParamCircuit circuit_;
  Observable obs_;
};

/// Empirical classification risk over a dataset. Per-example circuits are
/// built once up front. Gradients use the chain rule per example: the shifted
/// h evaluations are charged, while the loss-derivative factors come from the
/// exact h values already produced for loss monitoring, keeping the
/// per-iteration circuit counts (2k per example for a full gradient) exact in
/// both evaluator modes.
class ClassificationProblem final : public Problem {
 public:
  ClassificationProblem(ClassifierModel model, Dataset data, LossKind loss,
                        bool mean_normalize = false);

  std::size_t param_count() const override;
  std::uint64_t circuits_per_eval() const override;
  double evaluate(std::span<const double> theta, const Evaluator& evaluator,
                  LedgerDelta& delta) const override;
  double exact_value(std::span<const double> theta) const override;
  GradientVector exact_gradient(std::span<const double> theta) const override;
  double shifted_partial(std::span<const double> theta, std::size_t index,
                         const Evaluator& evaluator, LedgerDelta& delta) const override;
  double default_smoothness() const override;

  const ClassifierModel& model() const { return model_; }
  const Dataset& data() const { return data_; }
  LossKind loss() const { return loss_; }
  bool mean_normalized() const { return mean_normalize_; }

 private:
  double example_h(std::size_t i, std::span<const double> theta, const Evaluator& evaluator,
                   LedgerDelta& delta) const;

  ClassifierModel model_;
  Dataset data_;
  LossKind loss_;
  bool mean_normalize_;
  std::vector<ParamCircuit> example_circuits_;
};

}  // namespace qgsa
