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

#include "qgsa/qgsa.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <stdexcept>
#include <string>

#include "qgsa/bench.hpp"
#include "qgsa/gradients.hpp"
#include "qgsa/observable.hpp"
#include "qgsa/shots_cost.hpp"
#include "qgsa/statevector.hpp"

struct qgsa_circuit {
  qgsa::ParamCircuit impl;
};

struct qgsa_observable {
  qgsa::Observable impl;
};

struct qgsa_state {
  qgsa::StateVector impl;
};

namespace {

thread_local std::string g_last_error;

qgsa_status fail(qgsa_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs `body`, translating exceptions into status codes: invalid inputs to
// INVALID_ARGUMENT, filesystem problems to IO, other runtime errors (parsing,
// malformed files) to PARSE, everything else to INTERNAL.
template <typename Body>
qgsa_status guarded(Body&& body) {
  try {
    body();
    return QGSA_OK;
  } catch (const std::invalid_argument& e) {
    return fail(QGSA_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(QGSA_ERROR_IO, e.what());
  } catch (const std::runtime_error& e) {
    return fail(QGSA_ERROR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(QGSA_ERROR_INTERNAL, e.what());
  }
}

bool require(bool ok, const char* what) {
  if (!ok) {
    fail(QGSA_ERROR_INVALID_ARGUMENT, what);
  }
  return ok;
}

qgsa_status add_gate(qgsa_circuit* circuit, const qgsa::Gate& gate) {
  if (!require(circuit != nullptr, "circuit handle is NULL")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] { circuit->impl.add(gate); });
}

}  // namespace

extern "C" {

const char* qgsa_last_error(void) { return g_last_error.c_str(); }

const char* qgsa_version(void) { return "0.1.0"; }

qgsa_status qgsa_circuit_create(int32_t n_qubits, qgsa_circuit** out) {
  if (!require(out != nullptr, "out pointer is NULL")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] { *out = new qgsa_circuit{qgsa::ParamCircuit(n_qubits)}; });
}

void qgsa_circuit_free(qgsa_circuit* circuit) { delete circuit; }

qgsa_status qgsa_circuit_h(qgsa_circuit* circuit, int32_t target) {
  return add_gate(circuit, qgsa::Gate::h(target));
}

qgsa_status qgsa_circuit_rx(qgsa_circuit* circuit, int32_t target, int32_t param_slot) {
  return add_gate(circuit, qgsa::Gate::rx(target, param_slot));
}

qgsa_status qgsa_circuit_ry(qgsa_circuit* circuit, int32_t target, int32_t param_slot) {
  return add_gate(circuit, qgsa::Gate::ry(target, param_slot));
}

qgsa_status qgsa_circuit_rz(qgsa_circuit* circuit, int32_t target, int32_t param_slot) {
  return add_gate(circuit, qgsa::Gate::rz(target, param_slot));
}

qgsa_status qgsa_circuit_rz_const(qgsa_circuit* circuit, int32_t target, double angle) {
  return add_gate(circuit, qgsa::Gate::rz_const(target, angle));
}

qgsa_status qgsa_circuit_cx(qgsa_circuit* circuit, int32_t control, int32_t target) {
  return add_gate(circuit, qgsa::Gate::cx(control, target));
}

qgsa_status qgsa_circuit_param_count(const qgsa_circuit* circuit, int32_t* out) {
  if (!require(circuit != nullptr && out != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  *out = circuit->impl.param_count();
  return QGSA_OK;
}

qgsa_status qgsa_observable_parse(const char* text, qgsa_observable** out) {
  if (!require(text != nullptr && out != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] { *out = new qgsa_observable{qgsa::Observable::parse(text)}; });
}

void qgsa_observable_free(qgsa_observable* observable) { delete observable; }

qgsa_status qgsa_observable_normalize(const qgsa_observable* observable, qgsa_observable** out,
                                      double* c_star) {
  if (!require(observable != nullptr && out != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    *out = new qgsa_observable{qgsa::normalize(observable->impl)};
    if (c_star != nullptr) {
      *c_star = (*out)->impl.c_star();
    }
  });
}

qgsa_status qgsa_observable_format(const qgsa_observable* observable, char* buffer, size_t size,
                                   size_t* needed) {
  if (!require(observable != nullptr, "observable handle is NULL")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const std::string text = observable->impl.format();
    if (needed != nullptr) {
      *needed = text.size() + 1;
    }
    if (buffer != nullptr && size > text.size()) {
      std::memcpy(buffer, text.c_str(), text.size() + 1);
    }
  });
}

qgsa_status qgsa_run_circuit(const qgsa_circuit* circuit, const double* theta, size_t theta_len,
                             qgsa_state** out) {
  if (!require(circuit != nullptr && out != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  if (!require(theta != nullptr || theta_len == 0, "theta is NULL")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    *out = new qgsa_state{qgsa::run_circuit(circuit->impl, {theta, theta_len})};
  });
}

void qgsa_state_free(qgsa_state* state) { delete state; }

qgsa_status qgsa_state_size(const qgsa_state* state, size_t* out) {
  if (!require(state != nullptr && out != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  *out = state->impl.amplitudes().size();
  return QGSA_OK;
}

qgsa_status qgsa_state_amplitudes(const qgsa_state* state, double* interleaved, size_t len) {
  if (!require(state != nullptr && interleaved != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  if (!require(len == state->impl.amplitudes().size(), "length does not match the state")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  for (size_t i = 0; i < len; ++i) {
    interleaved[2 * i] = state->impl.amplitudes()[i].real();
    interleaved[2 * i + 1] = state->impl.amplitudes()[i].imag();
  }
  return QGSA_OK;
}

qgsa_status qgsa_expval(const qgsa_state* state, const qgsa_observable* observable,
                        double* out) {
  if (!require(state != nullptr && observable != nullptr && out != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = qgsa::expval(observable->impl, state->impl); });
}

qgsa_status qgsa_sample_expval(const qgsa_state* state, const qgsa_observable* observable,
                               uint64_t shots_per_term, uint64_t seed, double* out,
                               uint64_t* terms) {
  if (!require(state != nullptr && observable != nullptr && out != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    qgsa::Rng rng(seed);
    const qgsa::SampledExpval sampled =
        qgsa::sample_expval_obs(observable->impl, state->impl, shots_per_term, rng);
    *out = sampled.estimate;
    if (terms != nullptr) {
      *terms = sampled.terms_executed;
    }
  });
}

qgsa_status qgsa_state_distance(const qgsa_state* a, const qgsa_state* b, double* out) {
  if (!require(a != nullptr && b != nullptr && out != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = qgsa::state_distance(a->impl, b->impl); });
}

qgsa_status qgsa_psr_gradient(const qgsa_circuit* circuit, const qgsa_observable* observable,
                              const double* theta, size_t theta_len, double* grad,
                              uint64_t* circuits) {
  if (!require(circuit != nullptr && observable != nullptr && grad != nullptr,
               "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  if (!require(theta != nullptr || theta_len == 0, "theta is NULL")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const qgsa::PsrGradient result = qgsa::psr_gradient(
        circuit->impl, observable->impl, {theta, theta_len}, qgsa::Evaluator::exact());
    for (size_t i = 0; i < result.values.size(); ++i) {
      grad[i] = result.values[i];
    }
    if (circuits != nullptr) {
      *circuits = result.delta.circuits;
    }
  });
}

qgsa_status qgsa_shots_for_precision(double epsilon, double delta, uint64_t* out) {
  if (!require(out != nullptr, "out pointer is NULL")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = qgsa::shots_for_precision(epsilon, delta); });
}

qgsa_status qgsa_shots_for_descent(double gap, double delta, uint64_t* out) {
  if (!require(out != nullptr, "out pointer is NULL")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = qgsa::shots_for_descent(gap, delta); });
}

qgsa_status qgsa_train(const char* config_path, const char* out_dir, int32_t write_plots) {
  if (!require(config_path != nullptr && out_dir != nullptr, "NULL argument")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const qgsa::bench::RunConfig config = qgsa::bench::RunConfig::from_json_file(config_path);
    qgsa::bench::train_run(config, out_dir, write_plots != 0);
  });
}

qgsa_status qgsa_compare(const char* runs_dir, const char* out_dir, char** table) {
  if (!require(runs_dir != nullptr, "runs_dir is NULL")) {
    return QGSA_ERROR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const qgsa::bench::CompareResult result =
        qgsa::bench::compare_runs(runs_dir, out_dir != nullptr ? out_dir : runs_dir);
    if (table != nullptr) {
      char* copy = static_cast<char*>(std::malloc(result.rendered_table.size() + 1));
      if (copy == nullptr) {
        throw std::bad_alloc();
      }
      std::memcpy(copy, result.rendered_table.c_str(), result.rendered_table.size() + 1);
      *table = copy;
    }
  });
}

void qgsa_string_free(char* text) { std::free(text); }

}  // extern "C"
