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

#include "qgsa/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgsa {

namespace {

Evaluator make_evaluator(const EvalPlan& plan, std::uint64_t shots, Rng& rng) {
  return plan.sampled ? Evaluator::sampled(shots, rng) : Evaluator::exact(shots);
}

std::vector<double> axpy(std::span<const double> theta, double scale,
                         std::span<const double> direction) {
  std::vector<double> out(theta.begin(), theta.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += scale * direction[i];
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += a[i] * b[i];
  }
  return total;
}

}  // namespace

double SampledDirection::norm() const { return std::sqrt(dot(values, values)); }

bool SampledDirection::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

SampledDirection sample_direction(double mu, std::size_t param_count,
                                  DirectionDistribution distribution, double floor, Rng& rng) {
  if (param_count == 0) {
    throw std::invalid_argument("direction needs at least one component");
  }
  if (floor < 0.0) {
    throw std::invalid_argument("sampling floor must be non-negative");
  }
  SampledDirection direction;
  direction.half_width = std::max(2.0 * std::sqrt(std::abs(mu)), floor);
  direction.values.assign(param_count, 0.0);
  if (direction.half_width == 0.0) {
    return direction;  // collapsed support
  }
  for (double& value : direction.values) {
    if (distribution == DirectionDistribution::kUniform) {
      value = direction.half_width * (2.0 * rng.uniform() - 1.0);
    } else {
      const double sigma = direction.half_width / 2.0;
      double draw = sigma * rng.normal();
      while (std::abs(draw) > direction.half_width) {
        draw = sigma * rng.normal();
      }
      value = draw;
    }
  }
  return direction;
}

double ideal_step_size(std::span<const double> gradient, const SampledDirection& direction,
                       double lipschitz, double a) {
  if (gradient.size() != direction.values.size()) {
    throw std::invalid_argument("gradient and direction dimensions differ");
  }
  if (!(lipschitz > 0.0)) {
    throw std::invalid_argument("smoothness constant must be positive");
  }
  if (!(a > 1.0)) {
    throw std::invalid_argument("the step-size divisor a must exceed 1");
  }
  const double norm_sq = dot(direction.values, direction.values);
  if (norm_sq == 0.0) {
    throw std::invalid_argument("zero direction; resample or decay");
  }
  return 2.0 * std::abs(dot(gradient, direction.values)) / (a * lipschitz * norm_sq);
}

double spsa_step_length(const SpsaOptions& options, std::uint64_t t) {
  return options.a /
         std::pow(static_cast<double>(t) + 1.0 + options.stability, options.alpha_exp);
}

double spsa_perturbation(const SpsaOptions& options, std::uint64_t t) {
  return options.c / std::pow(static_cast<double>(t) + 1.0, options.gamma_exp);
}

OptState::OptState(std::vector<double> theta0, double alpha0, std::uint64_t seed)
    : theta(std::move(theta0)), alpha(alpha0), rng(seed) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("step size must be positive");
  }
}

namespace {

// Draws a direction, retrying a collapsed support a bounded number of times.
SampledDirection sample_with_retries(double mu, std::size_t k, const QgsaOptions& options,
                                     Rng& rng) {
  SampledDirection direction =
      sample_direction(mu, k, options.distribution, options.floor, rng);
  for (int attempt = 0; attempt < options.max_resamples && direction.is_zero(); ++attempt) {
    direction = sample_direction(mu, k, options.distribution, options.floor, rng);
  }
  return direction;
}

StepOutcome rejected_outcome(OptState& state, const QgsaOptions& options, double mu,
                             const LedgerDelta& used) {
  state.alpha /= 1.0 + options.gamma;
  StepOutcome outcome;
  outcome.accepted = false;
  outcome.new_theta = state.theta;
  outcome.mu_new = mu;
  outcome.used = used;
  return outcome;
}

}  // namespace

StepOutcome qgsa_ideal_step(OptState& state, const Problem& problem, const QgsaOptions& options,
                            const EvalPlan& plan, ExecutionLedger& ledger) {
  const std::size_t k = problem.param_count();
  LedgerDelta mu_delta;
  const double mu =
      problem.evaluate(state.theta, make_evaluator(plan, plan.n_mu, state.rng), mu_delta);
  ledger.record("qgsa.mu", mu_delta);

  const SampledDirection direction = sample_with_retries(mu, k, options, state.rng);
  if (direction.is_zero()) {
    return rejected_outcome(state, options, mu, mu_delta);
  }

  const GradientVector gradient = problem.exact_gradient(state.theta);
  const double lipschitz =
      options.lipschitz > 0.0 ? options.lipschitz : problem.default_smoothness();
  const double alpha = ideal_step_size(gradient, direction, lipschitz, options.a);

  const std::vector<double> theta_minus = axpy(state.theta, -alpha, direction.values);
  const std::vector<double> theta_plus = axpy(state.theta, +alpha, direction.values);
  LedgerDelta update_delta;
  const Evaluator arm_eval = make_evaluator(plan, plan.n_g, state.rng);
  const double mu_minus = problem.evaluate(theta_minus, arm_eval, update_delta);
  const double mu_plus = problem.evaluate(theta_plus, arm_eval, update_delta);
  ledger.record("qgsa.update", update_delta);

  StepOutcome outcome;
  outcome.direction_sign = mu_minus <= mu_plus ? -1 : +1;  // ties prefer the minus arm
  outcome.mu_new = std::min(mu_minus, mu_plus);
  outcome.new_theta = outcome.direction_sign < 0 ? theta_minus : theta_plus;
  outcome.used = mu_delta;
  outcome.used += update_delta;
  outcome.update_used = update_delta;
  state.theta = outcome.new_theta;
  state.alpha = alpha;
  return outcome;
}

StepOutcome qgsa_practical_step(OptState& state, const Problem& problem,
                                const QgsaOptions& options, const EvalPlan& plan,
                                ExecutionLedger& ledger) {
  const std::size_t k = problem.param_count();
  LedgerDelta mu_delta;
  double mu;
  if (options.reuse_mu && state.cached_mu.has_value()) {
    mu = *state.cached_mu;
  } else {
    mu = problem.evaluate(state.theta, make_evaluator(plan, plan.n_mu, state.rng), mu_delta);
    ledger.record("qgsa.mu", mu_delta);
  }
  state.cached_mu = mu;

  const SampledDirection direction = sample_with_retries(mu, k, options, state.rng);
  if (direction.is_zero()) {
    return rejected_outcome(state, options, mu, mu_delta);
  }

  const Evaluator arm_eval = make_evaluator(plan, plan.n_g, state.rng);
  LedgerDelta update_delta;
  StepOutcome outcome;
  outcome.used = mu_delta;

  const std::vector<double> theta_minus = axpy(state.theta, -state.alpha, direction.values);
  const double mu_minus = problem.evaluate(theta_minus, arm_eval, update_delta);
  if (mu_minus < mu) {
    ledger.record("qgsa.update", update_delta);
    outcome.accepted = true;
    outcome.direction_sign = -1;
    outcome.mu_new = mu_minus;
    outcome.new_theta = theta_minus;
  } else {
    const std::vector<double> theta_plus = axpy(state.theta, +state.alpha, direction.values);
    const double mu_plus = problem.evaluate(theta_plus, arm_eval, update_delta);
    ledger.record("qgsa.update", update_delta);
    if (mu_plus < mu) {
      outcome.accepted = true;
      outcome.direction_sign = +1;
      outcome.mu_new = mu_plus;
      outcome.new_theta = theta_plus;
    } else {
      outcome.accepted = false;
      outcome.mu_new = mu;
      outcome.new_theta = state.theta;
      state.alpha /= 1.0 + options.gamma;
    }
  }
  outcome.used += update_delta;
  outcome.update_used = update_delta;
  if (outcome.accepted) {
    state.theta = outcome.new_theta;
    state.cached_mu = outcome.mu_new;
  }
  return outcome;
}

StepOutcome gd_step(OptState& state, const Problem& problem, const EvalPlan& plan,
                    ExecutionLedger& ledger) {
  const std::size_t k = problem.param_count();
  const Evaluator evaluator = make_evaluator(plan, plan.n_g, state.rng);
  LedgerDelta delta;
  GradientVector gradient(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    gradient[i] = problem.shifted_partial(state.theta, i, evaluator, delta);
  }
  ledger.record("gd.gradient", delta);

  StepOutcome outcome;
  outcome.new_theta = axpy(state.theta, -state.alpha, gradient);
  outcome.used = delta;
  outcome.update_used = delta;
  state.theta = outcome.new_theta;
  return outcome;
}

StepOutcome rcd_step(OptState& state, const Problem& problem, const EvalPlan& plan,
                     ExecutionLedger& ledger) {
  const std::size_t k = problem.param_count();
  const std::size_t index = static_cast<std::size_t>(state.rng.below(k));
  const Evaluator evaluator = make_evaluator(plan, plan.n_g, state.rng);
  LedgerDelta delta;
  const double partial = problem.shifted_partial(state.theta, index, evaluator, delta);
  ledger.record("rcd.partial", delta);

  StepOutcome outcome;
  outcome.new_theta = state.theta;
  outcome.new_theta[index] -= state.alpha * partial;
  outcome.used = delta;
  outcome.update_used = delta;
  state.theta = outcome.new_theta;
  return outcome;
}

StepOutcome spsa_step(OptState& state, const Problem& problem, const SpsaOptions& options,
                      const EvalPlan& plan, ExecutionLedger& ledger) {
  const std::size_t k = problem.param_count();
  const double a_t = spsa_step_length(options, state.iteration);
  const double c_t = spsa_perturbation(options, state.iteration);

  std::vector<double> perturbation(k, 0.0);
  for (double& value : perturbation) {
    value = static_cast<double>(state.rng.rademacher());
  }

  const Evaluator evaluator = make_evaluator(plan, plan.n_g, state.rng);
  LedgerDelta delta;
  const double mu_plus =
      problem.evaluate(axpy(state.theta, +c_t, perturbation), evaluator, delta);
  const double mu_minus =
      problem.evaluate(axpy(state.theta, -c_t, perturbation), evaluator, delta);
  ledger.record("spsa.update", delta);

  const double slope = (mu_plus - mu_minus) / (2.0 * c_t);
  StepOutcome outcome;
  outcome.new_theta = state.theta;
  for (std::size_t i = 0; i < k; ++i) {
    // 1 / perturbation[i] equals perturbation[i] for Rademacher draws.
    outcome.new_theta[i] -= a_t * slope * perturbation[i];
  }
  outcome.used = delta;
  outcome.update_used = delta;
  state.theta = outcome.new_theta;
  return outcome;
}

OptimizerTrace run_optimizer(const RunOptions& options, const Problem& problem,
                             std::span<const double> theta0, std::uint64_t seed) {
  if (theta0.size() != problem.param_count()) {
    throw std::invalid_argument("initial point dimension does not match the problem");
  }
  OptState state(std::vector<double>(theta0.begin(), theta0.end()), options.alpha0, seed);
  OptimizerTrace trace;
  trace.seed = seed;
  trace.termination_reason = "iterations";

  std::uint64_t update_circuits = 0;
  double best_loss = problem.exact_value(state.theta);
  trace.records.push_back({0, best_loss, 0, 0, 0, state.alpha, true, 0, state.theta});

  const bool is_qgsa = options.optimizer == OptimizerKind::kQgsaIdeal ||
                       options.optimizer == OptimizerKind::kQgsaPractical;

  for (std::uint64_t t = 0; t < options.iterations; ++t) {
    StepOutcome outcome;
    switch (options.optimizer) {
      case OptimizerKind::kQgsaIdeal:
        outcome = qgsa_ideal_step(state, problem, options.qgsa, options.eval, trace.ledger);
        break;
      case OptimizerKind::kQgsaPractical:
        outcome = qgsa_practical_step(state, problem, options.qgsa, options.eval, trace.ledger);
        break;
      case OptimizerKind::kGradientDescent:
        outcome = gd_step(state, problem, options.eval, trace.ledger);
        break;
      case OptimizerKind::kCoordinateDescent:
        outcome = rcd_step(state, problem, options.eval, trace.ledger);
        break;
      case OptimizerKind::kSpsa:
        outcome = spsa_step(state, problem, options.spsa, options.eval, trace.ledger);
        break;
    }
    if (options.track_mu && !is_qgsa) {
      LedgerDelta monitor;
      problem.evaluate(state.theta, make_evaluator(options.eval, options.eval.n_mu, state.rng),
                       monitor);
      trace.ledger.record("track.mu", monitor);
      outcome.used += monitor;
    }
    ++state.iteration;
    update_circuits += outcome.update_used.circuits;

    const double loss = problem.exact_value(state.theta);
    trace.records.push_back({state.iteration, loss, trace.ledger.circuits(),
                             trace.ledger.shots(), update_circuits, state.alpha,
                             outcome.accepted, outcome.direction_sign, state.theta});

    const bool improved = is_qgsa ? outcome.accepted : loss < best_loss;
    if (improved) {
      state.stall_count = 0;
      best_loss = std::min(best_loss, loss);
    } else {
      ++state.stall_count;
      if (options.termination.stall_limit > 0 &&
          state.stall_count >= options.termination.stall_limit) {
        trace.termination_reason = "stall";
        break;
      }
    }
    if (state.alpha < options.termination.alpha_floor) {
      trace.termination_reason = "alpha_floor";
      break;
    }
    if (options.termination.grad_epsilon > 0.0 &&
        options.optimizer == OptimizerKind::kQgsaIdeal) {
      const GradientVector gradient = problem.exact_gradient(state.theta);
      if (std::sqrt(dot(gradient, gradient)) < options.termination.grad_epsilon) {
        trace.termination_reason = "grad_epsilon";
        break;
      }
    }
  }
  return trace;
}

}  // namespace qgsa
