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
#include <span>
#include <vector>

#include "qgsa/observable.hpp"
#include "qgsa/rng.hpp"
#include "qgsa/shots_cost.hpp"
#include "qgsa/statevector.hpp"

namespace qgsa {

using GradientVector = std::vector<double>;

/// How an expectation value is obtained: exact simulation or shot sampling.
/// Both charge the same circuit count to the ledger; `shots` is the sampling
/// budget per circuit in sampled mode and the priced nominal shot count per
/// circuit in exact mode (0 = unpriced).
struct Evaluator {
  enum class Mode { kExact, kSampled } mode = Mode::kExact;
  std::uint64_t shots = 0;
  Rng* rng = nullptr;

  static Evaluator exact(std::uint64_t priced_shots = 0) {
    return {Mode::kExact, priced_shots, nullptr};
  }
  static Evaluator sampled(std::uint64_t shots, Rng& rng) {
    return {Mode::kSampled, shots, &rng};
  }

  bool is_exact() const { return mode == Mode::kExact; }

  /// Expectation of `obs` on `state`; accumulates the circuit/shot charge.
  double measure(const Observable& obs, const StateVector& state, LedgerDelta& delta) const;
};

struct PsrPartial {
  double value = 0.0;
  LedgerDelta delta;
};

struct PsrGradient {
  GradientVector values;
  LedgerDelta delta;
};

/// Parameter-shift partial derivative (mu(theta_i + pi/2) - mu(theta_i - pi/2)) / 2.
/// Exact for Pauli-rotation slots; the slot must be bound to exactly one
/// rotation gate. Two circuit executions per observable term.
PsrPartial psr_partial(const ParamCircuit& circuit, const Observable& obs,
                       std::span<const double> theta, std::size_t index,
                       const Evaluator& evaluator);

/// Full parameter-shift gradient: 2k circuit executions per observable term.
PsrGradient psr_gradient(const ParamCircuit& circuit, const Observable& obs,
                         std::span<const double> theta, const Evaluator& evaluator);

/// Central finite differences (mu(theta + h e_i) - mu(theta - h e_i)) / (2h),
/// exact evaluation only. Test oracle; works for any slot binding.
GradientVector fd_gradient(const ParamCircuit& circuit, const Observable& obs,
                           std::span<const double> theta, double h);

/// Conservative Lipschitz smoothness default k * sum_i |c_i|: every Hessian
/// entry of a Pauli-rotation expectation is bounded by the coefficient sum,
/// and the spectral norm by k times the largest entry.
double default_lipschitz(std::size_t param_count, const Observable& obs);

}  // namespace qgsa
