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

#include <bit>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

using namespace qgsa;
namespace oracle = qgsa::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// mu(theta) = cos(theta): RX on one qubit read out in Z.
ExpectationProblem cos_problem() {
  ParamCircuit circuit(1);
  circuit.add(Gate::rx(0, 0));
  return {std::move(circuit), Observable(1, {{1.0, "Z"}})};
}

// mu identically zero: RX on one qubit read out in X.
ExpectationProblem zero_problem() {
  ParamCircuit circuit(1);
  circuit.add(Gate::rx(0, 0));
  return {std::move(circuit), Observable(1, {{1.0, "X"}})};
}

ExpectationProblem random_problem(Rng& rng, int n_qubits, int k) {
  ParamCircuit circuit = oracle::random_circuit(rng, n_qubits, k);
  Observable obs(n_qubits, {{1.0, oracle::random_pauli_string(rng, n_qubits)}});
  return {std::move(circuit), std::move(obs)};
}

}  // namespace

TEST_CASE("sample_direction stays inside the prescribed support") {
  Rng rng(42);
  for (const auto distribution :
       {DirectionDistribution::kUniform, DirectionDistribution::kTruncatedGaussian}) {
    for (double mu : {1.0, 0.25, -0.7, 0.0}) {
      const SampledDirection direction = sample_direction(mu, 6, distribution, 1e-3, rng);
      const double expected_width = std::max(2.0 * std::sqrt(std::abs(mu)), 1e-3);
      CHECK(direction.half_width == doctest::Approx(expected_width).epsilon(1e-15));
      for (double v : direction.values) {
        CHECK(std::abs(v) <= direction.half_width);
      }
    }
  }
}

TEST_CASE("sample_direction frozen half-widths") {
  Rng rng(1);
  CHECK(sample_direction(1.0, 3, DirectionDistribution::kUniform, 0.0, rng).half_width == 2.0);
  CHECK(sample_direction(0.25, 3, DirectionDistribution::kUniform, 0.0, rng).half_width == 1.0);
}

TEST_CASE("sample_direction collapses at mu = 0 with no floor") {
  Rng rng(2);
  const SampledDirection direction =
      sample_direction(0.0, 4, DirectionDistribution::kUniform, 0.0, rng);
  CHECK(direction.half_width == 0.0);
  CHECK(direction.is_zero());

  const SampledDirection floored =
      sample_direction(0.0, 4, DirectionDistribution::kUniform, 0.5, rng);
  CHECK(floored.half_width == 0.5);
  CHECK(!floored.is_zero());
}

TEST_CASE("ideal_step_size formula") {
  SampledDirection direction;
  direction.values = {1.0, 1.0};
  direction.half_width = 2.0;

  // g = g_s with a = 2 gives 1/L.
  CHECK(ideal_step_size(std::vector<double>{1.0, 1.0}, direction, 4.0, 2.0) ==
        doctest::Approx(0.25).epsilon(1e-15));
  // Orthogonal direction gives zero.
  CHECK(ideal_step_size(std::vector<double>{1.0, -1.0}, direction, 4.0, 2.0) == 0.0);
  // g = (1, 0), g_s = (1, 1), L = 1, a = 2 -> 2*1 / (2*1*2) = 0.5.
  CHECK(ideal_step_size(std::vector<double>{1.0, 0.0}, direction, 1.0, 2.0) ==
        doctest::Approx(0.5).epsilon(1e-15));

  SampledDirection zero;
  zero.values = {0.0, 0.0};
  CHECK_THROWS_AS(ideal_step_size(std::vector<double>{1.0, 1.0}, zero, 1.0, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ideal_step_size(std::vector<double>{1.0, 1.0}, direction, 0.0, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ideal_step_size(std::vector<double>{1.0, 1.0}, direction, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ideal_step_size(std::vector<double>{1.0}, direction, 1.0, 2.0),
                  std::invalid_argument);
}

TEST_CASE("spsa schedules") {
  const SpsaOptions options;  // a=0.1, alpha_exp=0.602, c=0.2, gamma_exp=0.101, A=0
  CHECK(spsa_step_length(options, 0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(spsa_perturbation(options, 0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(spsa_step_length(options, 1) == doctest::Approx(0.1 / std::pow(2.0, 0.602)));
  CHECK(spsa_perturbation(options, 3) == doctest::Approx(0.2 / std::pow(4.0, 0.101)));

  SpsaOptions stabilized;
  stabilized.stability = 10.0;
  CHECK(spsa_step_length(stabilized, 0) == doctest::Approx(0.1 / std::pow(11.0, 0.602)));
}

TEST_CASE("qgsa_ideal_step descends on cos(theta)") {
  const ExpectationProblem problem = cos_problem();
  OptState state({1.0}, 0.1, 321);
  ExecutionLedger ledger;
  QgsaOptions options;  // a = 2
  options.lipschitz = 1.0;

  const double before = problem.exact_value(state.theta);
  const StepOutcome outcome =
      qgsa_ideal_step(state, problem, options, EvalPlan{false, 100, 100}, ledger);
  CHECK(outcome.accepted);
  CHECK(outcome.mu_new.has_value());
  const double after = problem.exact_value(state.theta);
  CHECK(after < before);
  CHECK(*outcome.mu_new == doctest::Approx(after).epsilon(1e-12));

  // One evaluation at theta plus both arms.
  CHECK(ledger.circuits() == 3);
  CHECK(outcome.used.circuits == 3);
  CHECK(outcome.update_used.circuits == 2);
  CHECK(ledger.shots() == 300);
  CHECK((outcome.direction_sign == -1 || outcome.direction_sign == 1));
}

TEST_CASE("qgsa_ideal_step rejects after exhausting zero-direction resamples") {
  const ExpectationProblem problem = zero_problem();
  OptState state({0.8}, 0.1, 7);
  ExecutionLedger ledger;
  QgsaOptions options;
  options.floor = 0.0;  // keep the support collapsed

  const StepOutcome outcome =
      qgsa_ideal_step(state, problem, options, EvalPlan{false, 100, 100}, ledger);
  CHECK(!outcome.accepted);
  CHECK(outcome.direction_sign == 0);
  CHECK(state.theta[0] == 0.8);
  CHECK(ledger.circuits() == 1);  // only the objective evaluation at theta
  CHECK(state.alpha == doctest::Approx(0.1 / 1.1));  // decayed
}

TEST_CASE("argmin over both arms matches the sign rule away from ties") {
  // Update-by-argmin versus theta - sgn(g.g_s) alpha g_s on a single
  // parameter.
  Rng rng(98);
  int checked = 0;
  for (int draw = 0; draw < 60; ++draw) {
    const double theta = rng.uniform(0.6, 2.4);
    const double mu = std::cos(theta);
    const SampledDirection direction =
        sample_direction(mu, 1, DirectionDistribution::kUniform, 1e-3, rng);
    if (direction.is_zero()) {
      continue;
    }
    const double gradient = -std::sin(theta);
    const double alpha = ideal_step_size(std::vector<double>{gradient}, direction, 1.0, 2.0);
    const double mu_minus = std::cos(theta - alpha * direction.values[0]);
    const double mu_plus = std::cos(theta + alpha * direction.values[0]);
    if (std::abs(mu_minus - mu_plus) < 1e-12) {
      continue;  // tie
    }
    const int argmin_sign = mu_minus < mu_plus ? -1 : +1;
    const int rule_sign = gradient * direction.values[0] > 0.0 ? -1 : +1;
    CHECK(argmin_sign == rule_sign);
    ++checked;
  }
  CHECK(checked >= 40);
}

TEST_CASE("qgsa_practical_step arm accounting") {
  const ExpectationProblem problem = cos_problem();
  QgsaOptions options;
  const EvalPlan plan{false, 100, 100};
  bool saw_minus = false;
  bool saw_plus = false;
  for (std::uint64_t seed = 0; seed < 40 && !(saw_minus && saw_plus); ++seed) {
    OptState state({1.0}, 0.1, seed);
    ExecutionLedger ledger;
    const StepOutcome outcome = qgsa_practical_step(state, problem, options, plan, ledger);
    CHECK(outcome.used.circuits >= 2);
    CHECK(outcome.used.circuits <= 3);
    if (outcome.accepted && outcome.direction_sign == -1) {
      // The plus arm was never evaluated.
      CHECK(outcome.used.circuits == 2);
      CHECK(outcome.update_used.circuits == 1);
      saw_minus = true;
    }
    if (outcome.accepted && outcome.direction_sign == 1) {
      CHECK(outcome.used.circuits == 3);
      CHECK(outcome.update_used.circuits == 2);
      saw_plus = true;
    }
  }
  CHECK(saw_minus);
  CHECK(saw_plus);
}

TEST_CASE("qgsa_practical_step decays the step size when both arms fail") {
  // At the minimum of cos(theta) every move is uphill.
  const ExpectationProblem problem = cos_problem();
  QgsaOptions options;
  options.gamma = 0.1;
  OptState state({kPi}, 0.1, 5);
  ExecutionLedger ledger;
  const StepOutcome outcome =
      qgsa_practical_step(state, problem, options, EvalPlan{false, 100, 100}, ledger);
  CHECK(!outcome.accepted);
  CHECK(outcome.direction_sign == 0);
  CHECK(state.theta[0] == kPi);
  CHECK(state.alpha == doctest::Approx(0.1 / 1.1).epsilon(1e-15));
  CHECK(outcome.used.circuits == 3);

  // gamma = 0 leaves the step size alone.
  QgsaOptions frozen;
  frozen.gamma = 0.0;
  OptState state2({kPi}, 0.1, 5);
  ExecutionLedger ledger2;
  const StepOutcome outcome2 =
      qgsa_practical_step(state2, problem, frozen, EvalPlan{false, 100, 100}, ledger2);
  CHECK(!outcome2.accepted);
  CHECK(state2.alpha == 0.1);
}

TEST_CASE("practical accepted estimates decrease strictly with exact evaluators") {
  const ExpectationProblem problem = cos_problem();
  QgsaOptions options;
  OptState state({2.0}, 0.3, 11);
  ExecutionLedger ledger;
  double last_accepted = problem.exact_value(state.theta);
  int accepted = 0;
  for (int t = 0; t < 40; ++t) {
    const StepOutcome outcome =
        qgsa_practical_step(state, problem, options, EvalPlan{false, 100, 100}, ledger);
    if (outcome.accepted) {
      CHECK(*outcome.mu_new < last_accepted);
      last_accepted = *outcome.mu_new;
      ++accepted;
    }
  }
  CHECK(accepted > 5);
}

TEST_CASE("reuse_mu drops the repeated objective evaluation") {
  const ExpectationProblem problem = cos_problem();
  QgsaOptions options;
  options.reuse_mu = true;
  OptState state({1.0}, 0.1, 13);
  ExecutionLedger ledger;
  const StepOutcome first =
      qgsa_practical_step(state, problem, options, EvalPlan{false, 100, 100}, ledger);
  CHECK(first.used.circuits >= 2);  // first iteration still evaluates mu
  const std::uint64_t after_first = ledger.circuits();
  const StepOutcome second =
      qgsa_practical_step(state, problem, options, EvalPlan{false, 100, 100}, ledger);
  CHECK(second.used.circuits >= 1);
  CHECK(second.used.circuits <= 2);  // no mu evaluation this time
  CHECK(ledger.circuits() - after_first == second.used.circuits);
}

TEST_CASE("gd_step follows the full gradient") {
  const ExpectationProblem problem = cos_problem();
  OptState state({1.0}, 0.1, 0);
  ExecutionLedger ledger;
  const StepOutcome outcome = gd_step(state, problem, EvalPlan{false, 100, 100}, ledger);
  CHECK(outcome.accepted);
  // theta' = 1 - 0.1 * (-sin 1).
  CHECK(state.theta[0] == doctest::Approx(1.0841470984807897).epsilon(1e-15));
  CHECK(ledger.circuits() == 2);
  CHECK(outcome.update_used.circuits == 2);
}

TEST_CASE("gd_step at a stationary point leaves theta unchanged") {
  const ExpectationProblem problem = cos_problem();
  OptState state({0.0}, 0.1, 0);
  ExecutionLedger ledger;
  gd_step(state, problem, EvalPlan{false, 100, 100}, ledger);
  CHECK(state.theta[0] == 0.0);
}

TEST_CASE("gd_step charges 2k circuits") {
  Rng rng(44);
  const ExpectationProblem problem = random_problem(rng, 4, 12);
  OptState state(oracle::random_theta(rng, 12), 0.1, 3);
  ExecutionLedger ledger;
  const StepOutcome outcome = gd_step(state, problem, EvalPlan{false, 50, 50}, ledger);
  CHECK(outcome.used.circuits == 24);
  CHECK(ledger.shots() == 24 * 50);
}

TEST_CASE("rcd_step updates one seeded coordinate") {
  Rng rng(45);
  const ExpectationProblem problem = random_problem(rng, 3, 6);
  const std::vector<double> theta0 = oracle::random_theta(rng, 6);

  OptState state(theta0, 0.1, 21);
  ExecutionLedger ledger;
  const StepOutcome outcome = rcd_step(state, problem, EvalPlan{false, 100, 100}, ledger);
  CHECK(outcome.used.circuits == 2);
  int changed = 0;
  for (std::size_t i = 0; i < theta0.size(); ++i) {
    changed += state.theta[i] != theta0[i] ? 1 : 0;
  }
  CHECK(changed <= 1);

  // The coordinate sequence reproduces per seed.
  std::vector<std::size_t> sequence_a;
  std::vector<std::size_t> sequence_b;
  for (int repeat = 0; repeat < 2; ++repeat) {
    OptState walker(theta0, 0.1, 2024);
    ExecutionLedger scratch;
    auto& sink = repeat == 0 ? sequence_a : sequence_b;
    for (int t = 0; t < 10; ++t) {
      const std::vector<double> before = walker.theta;
      rcd_step(walker, problem, EvalPlan{false, 100, 100}, scratch);
      for (std::size_t i = 0; i < before.size(); ++i) {
        if (walker.theta[i] != before[i]) {
          sink.push_back(i);
        }
      }
    }
  }
  CHECK(sequence_a == sequence_b);
}

TEST_CASE("rcd_step with one parameter matches gd_step") {
  const ExpectationProblem problem = cos_problem();
  OptState gd_state({1.0}, 0.1, 9);
  OptState rcd_state({1.0}, 0.1, 9);
  ExecutionLedger a;
  ExecutionLedger b;
  gd_step(gd_state, problem, EvalPlan{false, 100, 100}, a);
  rcd_step(rcd_state, problem, EvalPlan{false, 100, 100}, b);
  CHECK(gd_state.theta[0] == rcd_state.theta[0]);
  CHECK(b.circuits() == 2);
}

TEST_CASE("spsa_step uses the two-sided simultaneous perturbation") {
  const ExpectationProblem problem = cos_problem();
  const double theta0 = 1.3;
  OptState state({theta0}, 0.1, 777);
  ExecutionLedger ledger;

  // Replay the generator to know the Rademacher draw.
  Rng replay(777);
  const double delta = static_cast<double>(replay.rademacher());

  const SpsaOptions options;
  const StepOutcome outcome =
      spsa_step(state, problem, options, EvalPlan{false, 60, 60}, ledger);
  const double c0 = 0.2;
  const double ghat =
      (std::cos(theta0 + c0 * delta) - std::cos(theta0 - c0 * delta)) / (2.0 * c0 * delta);
  CHECK(state.theta[0] == doctest::Approx(theta0 - 0.1 * ghat).epsilon(1e-12));
  CHECK(outcome.used.circuits == 2);
  CHECK(ledger.shots() == 120);
}

TEST_CASE("descent guarantee holds with the default smoothness bound") {
  Rng rng(314);
  for (int trial = 0; trial < 3; ++trial) {
    const ExpectationProblem problem = random_problem(rng, 4, 8);
    RunOptions options;
    options.optimizer = OptimizerKind::kQgsaIdeal;
    options.alpha0 = 0.1;
    options.iterations = 50;
    options.termination.stall_limit = 0;
    const OptimizerTrace trace =
        run_optimizer(options, problem, oracle::random_theta(rng, 8), 1000 + trial);
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
      CHECK(trace.records[i].loss <= trace.records[i - 1].loss + 1e-12);
    }
  }
}

TEST_CASE("run_optimizer converges gradient descent on cos(theta)") {
  const ExpectationProblem problem = cos_problem();
  RunOptions options;
  options.optimizer = OptimizerKind::kGradientDescent;
  options.alpha0 = 0.1;
  options.iterations = 100;
  options.termination.stall_limit = 0;
  const OptimizerTrace trace = run_optimizer(options, problem, std::vector<double>{1.0}, 1);
  CHECK(trace.records.back().loss <= -0.99);
  CHECK(trace.records.size() == 101);
  CHECK(trace.termination_reason == "iterations");
}

TEST_CASE("run_optimizer with zero iterations keeps only the initial record") {
  const ExpectationProblem problem = cos_problem();
  RunOptions options;
  options.optimizer = OptimizerKind::kQgsaPractical;
  options.iterations = 0;
  const OptimizerTrace trace = run_optimizer(options, problem, std::vector<double>{1.0}, 1);
  REQUIRE(trace.records.size() == 1);
  CHECK(trace.records[0].t == 0);
  CHECK(trace.records[0].loss == doctest::Approx(std::cos(1.0)));
  CHECK(trace.records[0].circuits == 0);
}

TEST_CASE("trace cumulative fields reconcile with the ledger") {
  Rng rng(717);
  const ExpectationProblem problem = random_problem(rng, 3, 5);
  for (const auto kind : {OptimizerKind::kQgsaPractical, OptimizerKind::kGradientDescent,
                          OptimizerKind::kCoordinateDescent, OptimizerKind::kSpsa}) {
    RunOptions options;
    options.optimizer = kind;
    options.iterations = 12;
    options.termination.stall_limit = 0;
    const OptimizerTrace trace =
        run_optimizer(options, problem, oracle::random_theta(rng, 5), 99);
    CHECK(trace.records.back().circuits == trace.ledger.circuits());
    CHECK(trace.records.back().shots == trace.ledger.shots());
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
      CHECK(trace.records[i].circuits >= trace.records[i - 1].circuits);
      CHECK(trace.records[i].shots >= trace.records[i - 1].shots);
      CHECK(trace.records[i].update_circuits >= trace.records[i - 1].update_circuits);
    }
  }
}

TEST_CASE("per-iteration circuit deltas match the optimizer cost model") {
  Rng rng(818);
  const ExpectationProblem problem = random_problem(rng, 3, 5);  // single-term observable
  const std::vector<double> theta0 = oracle::random_theta(rng, 5);

  const auto deltas = [&](OptimizerKind kind, bool track_mu) {
    RunOptions options;
    options.optimizer = kind;
    options.iterations = 8;
    options.termination.stall_limit = 0;
    options.track_mu = track_mu;
    const OptimizerTrace trace = run_optimizer(options, problem, theta0, 5);
    std::vector<std::uint64_t> result;
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
      result.push_back(trace.records[i].circuits - trace.records[i - 1].circuits);
    }
    return result;
  };

  for (const std::uint64_t delta : deltas(OptimizerKind::kGradientDescent, false)) {
    CHECK(delta == 10);  // 2k
  }
  for (const std::uint64_t delta : deltas(OptimizerKind::kSpsa, false)) {
    CHECK(delta == 2);
  }
  for (const std::uint64_t delta : deltas(OptimizerKind::kCoordinateDescent, false)) {
    CHECK(delta == 2);
  }
  for (const std::uint64_t delta : deltas(OptimizerKind::kCoordinateDescent, true)) {
    CHECK(delta == 3);  // +1 with objective tracking
  }
  for (const std::uint64_t delta : deltas(OptimizerKind::kQgsaIdeal, false)) {
    CHECK(delta == 3);
  }
  for (const std::uint64_t delta : deltas(OptimizerKind::kQgsaPractical, false)) {
    CHECK(delta >= 2);
    CHECK(delta <= 3);
  }
}

TEST_CASE("runs are bitwise reproducible per seed") {
  Rng rng(919);
  const ExpectationProblem problem = random_problem(rng, 3, 6);
  const std::vector<double> theta0 = oracle::random_theta(rng, 6);
  RunOptions options;
  options.optimizer = OptimizerKind::kQgsaPractical;
  options.iterations = 20;
  options.eval = EvalPlan{true, 200, 200};  // shot noise active

  const OptimizerTrace a = run_optimizer(options, problem, theta0, 31);
  const OptimizerTrace b = run_optimizer(options, problem, theta0, 31);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(std::bit_cast<std::uint64_t>(a.records[i].loss) ==
          std::bit_cast<std::uint64_t>(b.records[i].loss));
    CHECK(a.records[i].circuits == b.records[i].circuits);
    CHECK(a.records[i].theta == b.records[i].theta);
  }

  const OptimizerTrace c = run_optimizer(options, problem, theta0, 32);
  bool any_difference = false;
  for (std::size_t i = 0; i < std::min(a.records.size(), c.records.size()); ++i) {
    any_difference = any_difference || a.records[i].theta != c.records[i].theta;
  }
  CHECK(any_difference);
}

TEST_CASE("stall and step-floor termination fire at a minimum") {
  const ExpectationProblem problem = cos_problem();

  RunOptions stall;
  stall.optimizer = OptimizerKind::kQgsaPractical;
  stall.iterations = 200;
  stall.qgsa.gamma = 0.0;  // no decay, rejection forever
  stall.termination.stall_limit = 20;
  const OptimizerTrace stalled = run_optimizer(stall, problem, std::vector<double>{kPi}, 2);
  CHECK(stalled.termination_reason == "stall");
  CHECK(stalled.records.size() == 21);

  RunOptions floor;
  floor.optimizer = OptimizerKind::kQgsaPractical;
  floor.iterations = 500;
  floor.qgsa.gamma = 10.0;  // rapid decay on rejection
  floor.termination.stall_limit = 0;
  floor.termination.alpha_floor = 1e-6;
  const OptimizerTrace floored = run_optimizer(floor, problem, std::vector<double>{kPi}, 2);
  CHECK(floored.termination_reason == "alpha_floor");
  CHECK(floored.records.size() < 30);
}

TEST_CASE("gradient-norm termination applies to the ideal variant") {
  const ExpectationProblem problem = cos_problem();
  RunOptions options;
  options.optimizer = OptimizerKind::kQgsaIdeal;
  options.iterations = 50;
  options.termination.stall_limit = 0;
  options.termination.grad_epsilon = 0.5;
  // |sin(3)| = 0.14 < 0.5 at the start, so the loop exits after one step.
  const OptimizerTrace trace = run_optimizer(options, problem, std::vector<double>{3.0}, 4);
  CHECK(trace.termination_reason == "grad_epsilon");
  CHECK(trace.records.size() == 2);
}
