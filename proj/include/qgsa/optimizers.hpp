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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgsa/problem.hpp"
#include "qgsa/rng.hpp"
#include "qgsa/shots_cost.hpp"

namespace qgsa {

enum class OptimizerKind {
  kQgsaIdeal,
  kQgsaPractical,
  kGradientDescent,
  kCoordinateDescent,
  kSpsa,
};

enum class DirectionDistribution { kUniform, kTruncatedGaussian };

/// Random direction with i.i.d. components supported on
/// [-half_width, half_width], half_width = max(2*sqrt(|mu|), floor).
struct SampledDirection {
  std::vector<double> values;
  double half_width = 0.0;

  double norm() const;
  bool is_zero() const;
};

/// Draws a direction for the current objective value. The truncated-Gaussian
/// variant uses sigma = half_width / 2, rejected to the support.
SampledDirection sample_direction(double mu, std::size_t param_count,
                                  DirectionDistribution distribution, double floor, Rng& rng);

/// 2 |g . g_s| / (a L ||g_s||^2) with a > 1: strictly inside the step-size
/// range that guarantees descent. Throws when the direction is zero.
double ideal_step_size(std::span<const double> gradient, const SampledDirection& direction,
                       double lipschitz, double a);

struct QgsaOptions {
  DirectionDistribution distribution = DirectionDistribution::kUniform;
  double floor = 1e-3;     // keeps the sampling range from collapsing at mu = 0
  double a = 2.0;          // ideal-variant safety divisor, > 1
  double lipschitz = 0.0;  // ideal variant; 0 = problem default
  double gamma = 0.1;      // practical-variant step decay on rejection
  int max_resamples = 5;
  bool reuse_mu = false;   // practical variant: reuse the last accepted estimate
};

struct SpsaOptions {
  double a = 0.1;
  double alpha_exp = 0.602;
  double c = 0.2;
  double gamma_exp = 0.101;
  double stability = 0.0;  // the A constant
};

/// a_t = a / (t + 1 + A)^alpha_exp.
double spsa_step_length(const SpsaOptions& options, std::uint64_t t);

/// c_t = c / (t + 1)^gamma_exp.
double spsa_perturbation(const SpsaOptions& options, std::uint64_t t);

/// Shot budgets per objective evaluation. In exact mode the same counts are
/// charged to the ledger as the priced nominal shots.
struct EvalPlan {
  bool sampled = false;
  std::uint64_t n_mu = 100;  // evaluations of the objective at theta
  std::uint64_t n_g = 100;   // update-candidate and shifted evaluations
};

struct OptState {
  std::vector<double> theta;
  double alpha = 0.1;
  std::uint64_t iteration = 0;
  std::uint64_t stall_count = 0;
  Rng rng;
  std::optional<double> cached_mu;  // qgsa_practical with reuse_mu

  OptState(std::vector<double> theta0, double alpha0, std::uint64_t seed);
};

struct StepOutcome {
  bool accepted = true;
  std::vector<double> new_theta;
  std::optional<double> mu_new;  // the algorithm's estimate at new_theta, when evaluated
  LedgerDelta used;              // full charge of this step
  LedgerDelta update_used;       // parameter-update share of `used`
  int direction_sign = 0;        // -1 / +1 for the chosen QGSA arm, else 0
};

/// Algorithm-1 step: evaluates mu at theta (n_mu), samples a direction, sets
/// the step size from the exact gradient oracle, evaluates both arms (n_g
/// each) and moves to the argmin (ties prefer the minus arm). Three objective
/// evaluations per iteration.
StepOutcome qgsa_ideal_step(OptState& state, const Problem& problem, const QgsaOptions& options,
                            const EvalPlan& plan, ExecutionLedger& ledger);

/// Algorithm-2 step: evaluates mu at theta (n_mu) and the minus arm (n_g);
/// the plus arm only runs when the minus arm fails to improve. On double
/// failure the step size decays by 1/(1+gamma) and theta stays. Two or three
/// objective evaluations per iteration.
StepOutcome qgsa_practical_step(OptState& state, const Problem& problem,
                                const QgsaOptions& options, const EvalPlan& plan,
                                ExecutionLedger& ledger);

/// Full parameter-shift gradient descent: 2k objective evaluations.
StepOutcome gd_step(OptState& state, const Problem& problem, const EvalPlan& plan,
                    ExecutionLedger& ledger);

/// Randomized coordinate descent: one uniformly drawn coordinate, updated
/// from its parameter-shift partial. Two objective evaluations.
StepOutcome rcd_step(OptState& state, const Problem& problem, const EvalPlan& plan,
                     ExecutionLedger& ledger);

/// Simultaneous perturbation step with Rademacher perturbations. Two
/// objective evaluations.
StepOutcome spsa_step(OptState& state, const Problem& problem, const SpsaOptions& options,
                      const EvalPlan& plan, ExecutionLedger& ledger);

struct Termination {
  std::uint64_t stall_limit = 20;  // consecutive non-improving iterations
  double alpha_floor = 1e-6;
  double grad_epsilon = 0.0;  // ideal variant only; 0 disables
};

struct RunOptions {
  OptimizerKind optimizer = OptimizerKind::kQgsaPractical;
  double alpha0 = 0.1;
  QgsaOptions qgsa;
  SpsaOptions spsa;
  EvalPlan eval;
  Termination termination;
  std::uint64_t iterations = 100;
  bool track_mu = false;  // charge one extra objective evaluation per iteration
};

struct IterationRecord {
  std::uint64_t t = 0;
  double loss = 0.0;  // exact objective at theta_t (diagnostic)
  std::uint64_t circuits = 0;
  std::uint64_t shots = 0;
  std::uint64_t update_circuits = 0;  // cumulative, parameter-update share
  double alpha = 0.0;
  bool accepted = true;
  int direction_sign = 0;
  std::vector<double> theta;
};

struct OptimizerTrace {
  std::uint64_t seed = 0;
  std::vector<IterationRecord> records;  // records[0] holds the initial point
  ExecutionLedger ledger;
  std::string termination_reason;  // iterations | stall | alpha_floor | grad_epsilon
};

/// Runs the configured step operation for up to `iterations` iterations or
/// until a termination rule fires. One record per iteration plus the initial
/// record; cumulative ledger fields match the final ledger exactly.
OptimizerTrace run_optimizer(const RunOptions& options, const Problem& problem,
                             std::span<const double> theta0, std::uint64_t seed);

}  // namespace qgsa
