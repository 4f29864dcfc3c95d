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
#include <string>
#include <string_view>
#include <vector>

#include "qgsa/statevector.hpp"

namespace qgsa {

struct PauliTerm {
  double coefficient = 0.0;
  std::string letters;  // one of I/X/Y/Z per qubit
};

/// Real linear combination of Pauli strings. Terms with identical letters are
/// merged on construction. `c_star` records the cumulative scaling divisor
/// applied by normalize() (1 if unscaled).
class Observable {
 public:
  Observable(int n_qubits, std::vector<PauliTerm> terms, double c_star = 1.0);

  /// Parses "−0.5*XZI + 1.0*ZII": per term a coefficient, '*', letters;
  /// terms joined by '+' or '-'; whitespace-insensitive. The qubit count is
  /// the letter count.
  static Observable parse(std::string_view text);

  std::string format() const;

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  double c_star() const { return c_star_; }

  /// Sum of |coefficient| over terms.
  double coeff_abs_sum() const;

  /// Largest |coefficient|.
  double max_abs_coeff() const;

 private:
  int n_qubits_;
  std::vector<PauliTerm> terms_;
  double c_star_;
};

/// Coefficient scaling c_i' = c_i / c* with c* = max |c_i|. The returned
/// observable records the divisor in c_star (cumulatively, so the operation
/// is idempotent). Throws if every coefficient is zero.
Observable normalize(const Observable& obs);

/// Exact sum_i c_i <psi|P_i|psi>.
double expval(const Observable& obs, const StateVector& state);

struct SampledExpval {
  double estimate = 0.0;
  std::uint64_t terms_executed = 0;  // one circuit execution per term
};

/// Shot-sampled expectation, each term measured independently with
/// `shots_per_term` shots.
SampledExpval sample_expval_obs(const Observable& obs, const StateVector& state,
                                std::uint64_t shots_per_term, Rng& rng);

}  // namespace qgsa
