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

#include "qgsa/problem.hpp"

#include <numbers>
#include <stdexcept>

namespace qgsa {

ExpectationProblem::ExpectationProblem(ParamCircuit circuit, Observable obs)
    : circuit_(std::move(circuit)), obs_(std::move(obs)) {
  if (circuit_.n_qubits() != obs_.n_qubits()) {
    throw std::invalid_argument("circuit and observable qubit counts differ");
  }
  circuit_.check_slots();
}

std::size_t ExpectationProblem::param_count() const {
  return static_cast<std::size_t>(circuit_.param_count());
}

std::uint64_t ExpectationProblem::circuits_per_eval() const { return obs_.terms().size(); }

double ExpectationProblem::evaluate(std::span<const double> theta, const Evaluator& evaluator,
                                    LedgerDelta& delta) const {
  return evaluator.measure(obs_, run_circuit(circuit_, theta), delta);
}

double ExpectationProblem::exact_value(std::span<const double> theta) const {
  return expval(obs_, run_circuit(circuit_, theta));
}

GradientVector ExpectationProblem::exact_gradient(std::span<const double> theta) const {
  return psr_gradient(circuit_, obs_, theta, Evaluator::exact()).values;
}

double ExpectationProblem::shifted_partial(std::span<const double> theta, std::size_t index,
                                           const Evaluator& evaluator,
                                           LedgerDelta& delta) const {
  PsrPartial partial = psr_partial(circuit_, obs_, theta, index, evaluator);
  delta += partial.delta;
  return partial.value;
}

double ExpectationProblem::default_smoothness() const {
  return default_lipschitz(param_count(), obs_);
}

namespace {

// Curvature factors for the risk Hessian entry bound: |d^2 loss / d theta^2|
// per example is at most 1/2 for the hinge form (|loss'| = 1/2, |h''| <= 1)
// and 2 |h'|^2 + 2 |h - y| |h''| <= 6 for the squared error.
double loss_curvature_bound(LossKind kind) {
  return kind == LossKind::kQuantumHinge ? 0.5 : 6.0;
}

}  // namespace

ClassificationProblem::ClassificationProblem(ClassifierModel model, Dataset data, LossKind loss,
                                             bool mean_normalize)
    : model_(std::move(model)),
      data_(std::move(data)),
      loss_(loss),
      mean_normalize_(mean_normalize) {
  if (data_.size() == 0) {
    throw std::invalid_argument("classification problem needs a nonempty dataset");
  }
  if (data_.feature_count() != static_cast<std::size_t>(model_.n_qubits)) {
    throw std::invalid_argument("dataset feature count does not match the model");
  }
  example_circuits_.reserve(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) {
    example_circuits_.push_back(model_.circuit_for(data_.row(i)));
  }
}

std::size_t ClassificationProblem::param_count() const {
  return static_cast<std::size_t>(model_.param_count());
}

std::uint64_t ClassificationProblem::circuits_per_eval() const {
  return data_.size() * model_.readout.terms().size();
}

double ClassificationProblem::example_h(std::size_t i, std::span<const double> theta,
                                        const Evaluator& evaluator, LedgerDelta& delta) const {
  return evaluator.measure(model_.readout, run_circuit(example_circuits_[i], theta), delta);
}

double ClassificationProblem::evaluate(std::span<const double> theta, const Evaluator& evaluator,
                                       LedgerDelta& delta) const {
  double risk = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    risk += loss_value(loss_, example_h(i, theta, evaluator, delta), data_.label(i));
  }
  return mean_normalize_ ? risk / static_cast<double>(data_.size()) : risk;
}

double ClassificationProblem::exact_value(std::span<const double> theta) const {
  LedgerDelta scratch;
  return evaluate(theta, Evaluator::exact(), scratch);
}

GradientVector ClassificationProblem::exact_gradient(std::span<const double> theta) const {
  LedgerDelta scratch;
  GradientVector grad(param_count(), 0.0);
  for (std::size_t i = 0; i < param_count(); ++i) {
    grad[i] = shifted_partial(theta, i, Evaluator::exact(), scratch);
  }
  return grad;
}

double ClassificationProblem::shifted_partial(std::span<const double> theta, std::size_t index,
                                              const Evaluator& evaluator,
                                              LedgerDelta& delta) const {
  if (index >= param_count()) {
    throw std::invalid_argument("parameter index out of range");
  }
  // Chain rule per example: the loss-derivative factors use the exact h
  // values (free diagnostics), the shifted h evaluations are charged.
  constexpr double shift = std::numbers::pi / 2.0;
  std::vector<double> shifted(theta.begin(), theta.end());
  double total = 0.0;
  LedgerDelta scratch;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const double h = example_h(i, theta, Evaluator::exact(), scratch);
    shifted[index] = theta[index] + shift;
    const double plus = example_h(i, shifted, evaluator, delta);
    shifted[index] = theta[index] - shift;
    const double minus = example_h(i, shifted, evaluator, delta);
    shifted[index] = theta[index];
    total += loss_derivative(loss_, h, data_.label(i)) * (plus - minus) / 2.0;
  }
  return mean_normalize_ ? total / static_cast<double>(data_.size()) : total;
}

double ClassificationProblem::default_smoothness() const {
  const double per_example =
      default_lipschitz(param_count(), model_.readout) * loss_curvature_bound(loss_);
  return mean_normalize_ ? per_example : per_example * static_cast<double>(data_.size());
}

}  // namespace qgsa
