/* Copyright 2026 The qgsa developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the qgsa shared library.
 *
 * Objects are opaque handles created and destroyed through these functions.
 * Every fallible call returns a qgsa_status; on failure the thread-local
 * message from qgsa_last_error() describes what went wrong. Handles returned
 * through out-parameters are only valid when the call returned QGSA_OK.
 */

#ifndef QGSA_QGSA_H_
#define QGSA_QGSA_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qgsa_status {
  QGSA_OK = 0,
  QGSA_ERROR_INVALID_ARGUMENT = 1,
  QGSA_ERROR_IO = 2,
  QGSA_ERROR_PARSE = 3,
  QGSA_ERROR_INTERNAL = 4
} qgsa_status;

/* Message for the most recent failure on the calling thread; never NULL. */
const char* qgsa_last_error(void);

const char* qgsa_version(void);

/* ---- parameterized circuits ------------------------------------------- */

typedef struct qgsa_circuit qgsa_circuit;

qgsa_status qgsa_circuit_create(int32_t n_qubits, qgsa_circuit** out);
void qgsa_circuit_free(qgsa_circuit* circuit);

qgsa_status qgsa_circuit_h(qgsa_circuit* circuit, int32_t target);
qgsa_status qgsa_circuit_rx(qgsa_circuit* circuit, int32_t target, int32_t param_slot);
qgsa_status qgsa_circuit_ry(qgsa_circuit* circuit, int32_t target, int32_t param_slot);
qgsa_status qgsa_circuit_rz(qgsa_circuit* circuit, int32_t target, int32_t param_slot);
qgsa_status qgsa_circuit_rz_const(qgsa_circuit* circuit, int32_t target, double angle);
qgsa_status qgsa_circuit_cx(qgsa_circuit* circuit, int32_t control, int32_t target);

qgsa_status qgsa_circuit_param_count(const qgsa_circuit* circuit, int32_t* out);

/* ---- observables ------------------------------------------------------ */

typedef struct qgsa_observable qgsa_observable;

/* Text form: "-0.5*XZI + 1.0*ZII". */
qgsa_status qgsa_observable_parse(const char* text, qgsa_observable** out);
void qgsa_observable_free(qgsa_observable* observable);

/* Coefficient scaling by the largest magnitude; c_star receives the divisor
 * recorded on the result (may be NULL). */
qgsa_status qgsa_observable_normalize(const qgsa_observable* observable, qgsa_observable** out,
                                      double* c_star);

/* Writes the text form. `needed` (may be NULL) receives the full length
 * including the terminator; the buffer is filled when it is large enough. */
qgsa_status qgsa_observable_format(const qgsa_observable* observable, char* buffer, size_t size,
                                   size_t* needed);

/* ---- statevector simulation ------------------------------------------- */

typedef struct qgsa_state qgsa_state;

/* |psi(theta)> = U(theta)|0...0>; theta_len must equal the parameter count. */
qgsa_status qgsa_run_circuit(const qgsa_circuit* circuit, const double* theta, size_t theta_len,
                             qgsa_state** out);
void qgsa_state_free(qgsa_state* state);

qgsa_status qgsa_state_size(const qgsa_state* state, size_t* out);

/* Copies amplitudes as interleaved (re, im) pairs; `len` is the amplitude
 * count and must match qgsa_state_size. */
qgsa_status qgsa_state_amplitudes(const qgsa_state* state, double* interleaved, size_t len);

qgsa_status qgsa_expval(const qgsa_state* state, const qgsa_observable* observable, double* out);

/* Shot-sampled expectation; `terms` (may be NULL) receives the number of
 * circuit executions (one per observable term). */
qgsa_status qgsa_sample_expval(const qgsa_state* state, const qgsa_observable* observable,
                               uint64_t shots_per_term, uint64_t seed, double* out,
                               uint64_t* terms);

/* Euclidean norm of the amplitude difference. */
qgsa_status qgsa_state_distance(const qgsa_state* a, const qgsa_state* b, double* out);

/* ---- gradients --------------------------------------------------------- */

/* Exact parameter-shift gradient; grad must hold theta_len entries.
 * `circuits` (may be NULL) receives the circuit executions this would cost
 * on hardware (2k per observable term). */
qgsa_status qgsa_psr_gradient(const qgsa_circuit* circuit, const qgsa_observable* observable,
                              const double* theta, size_t theta_len, double* grad,
                              uint64_t* circuits);

/* ---- shot calculators -------------------------------------------------- */

qgsa_status qgsa_shots_for_precision(double epsilon, double delta, uint64_t* out);
qgsa_status qgsa_shots_for_descent(double gap, double delta, uint64_t* out);

/* ---- benchmark orchestration ------------------------------------------ */

/* Runs a training configuration; writes per-seed trace CSVs, summary.json
 * and (when write_plots is nonzero) SVG charts under out_dir. */
qgsa_status qgsa_train(const char* config_path, const char* out_dir, int32_t write_plots);

/* Tabulates completed run summaries found under runs_dir (at least two) and
 * writes the comparison artifacts to out_dir (NULL = runs_dir). `table`,
 * when non-NULL, receives a malloc'd rendering of the comparison table that
 * the caller frees with qgsa_string_free. */
qgsa_status qgsa_compare(const char* runs_dir, const char* out_dir, char** table);

void qgsa_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* QGSA_QGSA_H_ */
