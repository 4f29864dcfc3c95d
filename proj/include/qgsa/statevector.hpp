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

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qgsa/rng.hpp"

namespace qgsa {

using Complex = std::complex<double>;

/// Dense simulation is capped at desk scale.
inline constexpr int kMaxQubits = 20;

enum class GateKind : std::uint8_t { kH, kRX, kRY, kRZ, kRZConst, kCX };

/// One circuit element. Rotation gates use the conventional half-angle
/// convention, e.g. RX(theta) = exp(-i * theta * X / 2).
struct Gate {
  GateKind kind = GateKind::kH;
  int target = 0;
  int control = -1;     // CX only
  int param_slot = -1;  // RX / RY / RZ only
  double angle = 0.0;   // RZConst only

  static Gate h(int target) { return {GateKind::kH, target, -1, -1, 0.0}; }
  static Gate rx(int target, int slot) { return {GateKind::kRX, target, -1, slot, 0.0}; }
  static Gate ry(int target, int slot) { return {GateKind::kRY, target, -1, slot, 0.0}; }
  static Gate rz(int target, int slot) { return {GateKind::kRZ, target, -1, slot, 0.0}; }
  static Gate rz_const(int target, double angle) {
    return {GateKind::kRZConst, target, -1, -1, angle};
  }
  static Gate cx(int control, int target) { return {GateKind::kCX, target, control, -1, 0.0}; }

  bool is_rotation() const {
    return kind == GateKind::kRX || kind == GateKind::kRY || kind == GateKind::kRZ;
  }
};

/// Ordered gate list with symbolic parameter slots. The number of distinct
/// slots k is max slot index + 1; every index in [0, k) must be bound to at
/// least one gate before the circuit can run.
class ParamCircuit {
 public:
  explicit ParamCircuit(int n_qubits);

  /// Appends a gate; qubit indices and slot index are validated here.
  void add(const Gate& gate);

  int n_qubits() const { return n_qubits_; }
  int param_count() const { return param_count_; }
  const std::vector<Gate>& gates() const { return gates_; }

  /// Number of gates bound to the given slot.
  int slot_bindings(int slot) const;

  /// Throws if some slot index below param_count() is unused.
  void check_slots() const;

 private:
  int n_qubits_;
  int param_count_ = 0;
  std::vector<Gate> gates_;
  std::vector<int> slot_uses_;
};

/// Pure n-qubit state as a dense amplitude vector of length 2^n.
/// Qubit 0 is the most significant bit of the basis index.
class StateVector {
 public:
  /// |0...0>; n_qubits must be in [1, kMaxQubits].
  explicit StateVector(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }

  /// Applies one gate in place. Parametric gates read their angle from
  /// `theta`; the others ignore it.
  void apply(const Gate& gate, std::span<const double> theta);

  /// Applies a single Pauli letter (I is a no-op) in place.
  void apply_pauli(int qubit, char letter);

  double squared_norm() const;

 private:
  void apply_single_qubit(int target, Complex m00, Complex m01, Complex m10, Complex m11);
  void apply_cx(int control, int target);

  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

StateVector init_zero(int n_qubits);

/// |psi(theta)> = U(theta)|0...0>. theta.size() must equal the circuit's
/// parameter count and every slot must be bound.
StateVector run_circuit(const ParamCircuit& circuit, std::span<const double> theta);

/// Exact <psi|P|psi> for a Pauli string over {I, X, Y, Z}, one letter per
/// qubit (letter 0 acts on qubit 0).
double expval_pauli(const StateVector& state, std::string_view pauli_string);

/// Euclidean norm of the amplitude difference.
double state_distance(const StateVector& a, const StateVector& b);

/// Shot-noise model for a single Pauli term: returns 2*m/shots - 1 with
/// m ~ Binomial(shots, (1 + <P>)/2). Unbiased and deterministic per seed.
double sample_expval(const StateVector& state, std::string_view pauli_string,
                     std::uint64_t shots, Rng& rng);

}  // namespace qgsa
