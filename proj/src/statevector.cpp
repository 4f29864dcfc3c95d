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

#include "qgsa/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qgsa {

namespace {

constexpr Complex kImag{0.0, 1.0};

void check_qubit(int qubit, int n_qubits, const char* what) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::invalid_argument(std::string(what) + " qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(n_qubits) + " qubits");
  }
}

}  // namespace

ParamCircuit::ParamCircuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("circuit qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
}

void ParamCircuit::add(const Gate& gate) {
  check_qubit(gate.target, n_qubits_, "target");
  if (gate.kind == GateKind::kCX) {
    check_qubit(gate.control, n_qubits_, "control");
    if (gate.control == gate.target) {
      throw std::invalid_argument("CX control and target must differ");
    }
  }
  if (gate.is_rotation()) {
    if (gate.param_slot < 0) {
      throw std::invalid_argument("rotation gate requires a non-negative parameter slot");
    }
    if (gate.param_slot >= static_cast<int>(slot_uses_.size())) {
      slot_uses_.resize(gate.param_slot + 1, 0);
    }
    ++slot_uses_[gate.param_slot];
    param_count_ = std::max(param_count_, gate.param_slot + 1);
  }
  gates_.push_back(gate);
}

int ParamCircuit::slot_bindings(int slot) const {
  if (slot < 0 || slot >= static_cast<int>(slot_uses_.size())) {
    return 0;
  }
  return slot_uses_[slot];
}

void ParamCircuit::check_slots() const {
  for (int slot = 0; slot < param_count_; ++slot) {
    if (slot_uses_[slot] == 0) {
      throw std::invalid_argument("parameter slot " + std::to_string(slot) +
                                  " is not bound to any gate");
    }
  }
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(n_qubits));
  }
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amplitudes_[0] = Complex{1.0, 0.0};
}

void StateVector::apply_single_qubit(int target, Complex m00, Complex m01, Complex m10,
                                     Complex m11) {
  // Qubit 0 is the most significant bit of the basis index.
  const std::size_t stride = std::size_t{1} << (n_qubits_ - 1 - target);
  const std::size_t size = amplitudes_.size();
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amplitudes_[i];
      const Complex a1 = amplitudes_[i + stride];
      amplitudes_[i] = m00 * a0 + m01 * a1;
      amplitudes_[i + stride] = m10 * a0 + m11 * a1;
    }
  }
}

void StateVector::apply_cx(int control, int target) {
  const std::size_t cbit = std::size_t{1} << (n_qubits_ - 1 - control);
  const std::size_t tbit = std::size_t{1} << (n_qubits_ - 1 - target);
  const std::size_t size = amplitudes_.size();
  for (std::size_t i = 0; i < size; ++i) {
    if ((i & cbit) != 0 && (i & tbit) == 0) {
      std::swap(amplitudes_[i], amplitudes_[i | tbit]);
    }
  }
}

void StateVector::apply(const Gate& gate, std::span<const double> theta) {
  check_qubit(gate.target, n_qubits_, "target");
  switch (gate.kind) {
    case GateKind::kH: {
      const double s = 1.0 / std::sqrt(2.0);
      apply_single_qubit(gate.target, {s, 0.0}, {s, 0.0}, {s, 0.0}, {-s, 0.0});
      break;
    }
    case GateKind::kRX: {
      const double half = theta[gate.param_slot] / 2.0;
      const Complex c{std::cos(half), 0.0};
      const Complex s = -kImag * std::sin(half);
      apply_single_qubit(gate.target, c, s, s, c);
      break;
    }
    case GateKind::kRY: {
      const double half = theta[gate.param_slot] / 2.0;
      const Complex c{std::cos(half), 0.0};
      const Complex s{std::sin(half), 0.0};
      apply_single_qubit(gate.target, c, -s, s, c);
      break;
    }
    case GateKind::kRZ:
    case GateKind::kRZConst: {
      const double half =
          (gate.kind == GateKind::kRZ ? theta[gate.param_slot] : gate.angle) / 2.0;
      const Complex phase_lo = std::exp(-kImag * half);
      const Complex phase_hi = std::exp(kImag * half);
      apply_single_qubit(gate.target, phase_lo, {0.0, 0.0}, {0.0, 0.0}, phase_hi);
      break;
    }
    case GateKind::kCX:
      check_qubit(gate.control, n_qubits_, "control");
      apply_cx(gate.control, gate.target);
      break;
  }
}

void StateVector::apply_pauli(int qubit, char letter) {
  check_qubit(qubit, n_qubits_, "pauli");
  switch (letter) {
    case 'I':
      break;
    case 'X':
      apply_single_qubit(qubit, {0, 0}, {1, 0}, {1, 0}, {0, 0});
      break;
    case 'Y':
      apply_single_qubit(qubit, {0, 0}, -kImag, kImag, {0, 0});
      break;
    case 'Z':
      apply_single_qubit(qubit, {1, 0}, {0, 0}, {0, 0}, {-1, 0});
      break;
    default:
      throw std::invalid_argument(std::string("invalid Pauli letter '") + letter + "'");
  }
}

double StateVector::squared_norm() const {
  double total = 0.0;
  for (const Complex& a : amplitudes_) {
    total += std::norm(a);
  }
  return total;
}

StateVector init_zero(int n_qubits) { return StateVector(n_qubits); }

StateVector run_circuit(const ParamCircuit& circuit, std::span<const double> theta) {
  if (theta.size() != static_cast<std::size_t>(circuit.param_count())) {
    throw std::invalid_argument("theta has " + std::to_string(theta.size()) +
                                " entries, circuit expects " +
                                std::to_string(circuit.param_count()));
  }
  circuit.check_slots();
  StateVector state(circuit.n_qubits());
  for (const Gate& gate : circuit.gates()) {
    state.apply(gate, theta);
  }
  return state;
}

double expval_pauli(const StateVector& state, std::string_view pauli_string) {
  if (pauli_string.size() != static_cast<std::size_t>(state.n_qubits())) {
    throw std::invalid_argument("Pauli string length " + std::to_string(pauli_string.size()) +
                                " does not match qubit count " +
                                std::to_string(state.n_qubits()));
  }
  // <psi|P|psi> = Re <psi|(P psi)>; applying P letter by letter keeps the
  // arithmetic identical to gate application.
  StateVector transformed = state;
  for (int qubit = 0; qubit < state.n_qubits(); ++qubit) {
    transformed.apply_pauli(qubit, pauli_string[qubit]);
  }
  Complex inner{0.0, 0.0};
  for (std::size_t i = 0; i < state.amplitudes().size(); ++i) {
    inner += std::conj(state.amplitudes()[i]) * transformed.amplitudes()[i];
  }
  return inner.real();
}

double state_distance(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("state dimensions differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
    total += std::norm(a.amplitudes()[i] - b.amplitudes()[i]);
  }
  return std::sqrt(total);
}

double sample_expval(const StateVector& state, std::string_view pauli_string,
                     std::uint64_t shots, Rng& rng) {
  if (shots == 0) {
    throw std::invalid_argument("shot count must be positive");
  }
  const double exact = expval_pauli(state, pauli_string);
  const double p = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
  const std::uint64_t m = binomial_draw(rng, shots, p);
  return 2.0 * static_cast<double>(m) / static_cast<double>(shots) - 1.0;
}

}  // namespace qgsa
