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

#include "qgsa/gradients.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace qgsa {

namespace {

// Shift for Pauli rotations; their expectation is a single-frequency
// trigonometric function of each parameter.
constexpr double kShift = std::numbers::pi / 2.0;

void check_theta(const ParamCircuit& circuit, std::span<const double> theta) {
  if (theta.size() != static_cast<std::size_t>(circuit.param_count())) {
    throw std::invalid_argument("theta has " + std::to_string(theta.size()) +
                                " entries, circuit expects " +
                                std::to_string(circuit.param_count()));
  }
}

void check_shift_slot(const ParamCircuit& circuit, std::size_t index) {
  const int bindings = circuit.slot_bindings(static_cast<int>(index));
  if (bindings == 0) {
    throw std::invalid_argument("parameter slot " + std::to_string(index) + " is unused");
  }
  if (bindings > 1) {
    // The two-point shift rule differentiates one gate angle; a slot feeding
    // several gates needs per-occurrence shifts. fd_gradient handles those.
    throw std::invalid_argument("parameter slot " + std::to_string(index) +
                                " is bound to " + std::to_string(bindings) +
                                " gates; the shift rule needs a unique binding");
  }
}

}  // namespace

double Evaluator::measure(const Observable& obs, const StateVector& state,
                          LedgerDelta& delta) const {
  const std::uint64_t terms = obs.terms().size();
  delta += {terms, terms * shots};
  if (mode == Mode::kExact) {
    return expval(obs, state);
  }
  if (rng == nullptr) {
    throw std::invalid_argument("sampled evaluator requires a generator");
  }
  return sample_expval_obs(obs, state, shots, *rng).estimate;
}

PsrPartial psr_partial(const ParamCircuit& circuit, const Observable& obs,
                       std::span<const double> theta, std::size_t index,
                       const Evaluator& evaluator) {
  check_theta(circuit, theta);
  if (index >= theta.size()) {
    throw std::invalid_argument("parameter index out of range");
  }
  check_shift_slot(circuit, index);

  std::vector<double> shifted(theta.begin(), theta.end());
  PsrPartial result;
  shifted[index] = theta[index] + kShift;
  const double plus = evaluator.measure(obs, run_circuit(circuit, shifted), result.delta);
  shifted[index] = theta[index] - kShift;
  const double minus = evaluator.measure(obs, run_circuit(circuit, shifted), result.delta);
  result.value = (plus - minus) / 2.0;
  return result;
}

PsrGradient psr_gradient(const ParamCircuit& circuit, const Observable& obs,
                         std::span<const double> theta, const Evaluator& evaluator) {
  check_theta(circuit, theta);
  PsrGradient result;
  result.values.reserve(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    PsrPartial partial = psr_partial(circuit, obs, theta, i, evaluator);
    result.values.push_back(partial.value);
    result.delta += partial.delta;
  }
  return result;
}

GradientVector fd_gradient(const ParamCircuit& circuit, const Observable& obs,
                           std::span<const double> theta, double h) {
  check_theta(circuit, theta);
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  GradientVector grad;
  grad.reserve(theta.size());
  std::vector<double> shifted(theta.begin(), theta.end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    shifted[i] = theta[i] + h;
    const double plus = expval(obs, run_circuit(circuit, shifted));
    shifted[i] = theta[i] - h;
    const double minus = expval(obs, run_circuit(circuit, shifted));
    shifted[i] = theta[i];
    grad.push_back((plus - minus) / (2.0 * h));
  }
  return grad;
}

double default_lipschitz(std::size_t param_count, const Observable& obs) {
  if (param_count == 0) {
    throw std::invalid_argument("parameter count must be positive");
  }
  return static_cast<double>(param_count) * obs.coeff_abs_sum();
}

}  // namespace qgsa
