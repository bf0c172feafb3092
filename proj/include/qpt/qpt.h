/* Copyright 2026 The qpt authors
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

/* C interface to the qpt phase-transformation simulator.
 *
 * All functions that can fail return a qpt_status; QPT_OK is 0. On failure
 * the thread-local message from qpt_last_error() describes the problem.
 * Objects returned through qpt_state** handles are owned by the caller and
 * released with qpt_state_free(). Complex amplitude buffers are interleaved
 * doubles: re0, im0, re1, im1, ...
 */

#ifndef QPT_QPT_H
#define QPT_QPT_H

#include <stddef.h>
#include <stdint.h>

#ifndef QPT_API
#if defined(_WIN32)
#define QPT_API
#else
#define QPT_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qpt_status {
    QPT_OK = 0,
    QPT_ERROR_INVALID_ARGUMENT = 1,
    QPT_ERROR_DIMENSION_MISMATCH = 2,
    QPT_ERROR_NUMERICAL = 3,
    QPT_ERROR_IO = 4,
    QPT_ERROR_INTERNAL = 5
} qpt_status;

typedef enum qpt_protocol_mode {
    QPT_MODE_SAMPLED = 0,
    QPT_MODE_POSTSELECTED = 1,
    QPT_MODE_EXACT = 2
} qpt_protocol_mode;

typedef enum qpt_completion {
    QPT_COMPLETION_HOUSEHOLDER = 0,
    QPT_COMPLETION_GRAM_SCHMIDT = 1
} qpt_completion;

typedef enum qpt_format { QPT_FORMAT_CSV = 0, QPT_FORMAT_JSON = 1 } qpt_format;

typedef enum qpt_phase_mode {
    QPT_PHASE_EXACT = 0,
    QPT_PHASE_PROTOCOL = 1
} qpt_phase_mode;

/* Opaque dense statevector. */
typedef struct qpt_state qpt_state;

QPT_API const char* qpt_version(void);

/* Message for the most recent failing call on this thread; never NULL. */
QPT_API const char* qpt_last_error(void);

/* ---- statevector ------------------------------------------------------- */

QPT_API qpt_status qpt_state_basis(int n_qubits, uint64_t index, qpt_state** out);

/* n_amplitudes must be a power of two >= 2; the state is normalized. */
QPT_API qpt_status qpt_state_from_amplitudes(const double* interleaved, size_t n_amplitudes,
                                     qpt_state** out);

/* Amplitude-vector files: a JSON array of [re, im] pairs. */
QPT_API qpt_status qpt_state_load(const char* path, qpt_state** out);
QPT_API qpt_status qpt_state_save(const qpt_state* state, const char* path);

QPT_API void qpt_state_free(qpt_state* state);

QPT_API int qpt_state_num_qubits(const qpt_state* state);
QPT_API size_t qpt_state_dim(const qpt_state* state);

/* Copies 2 * dim doubles into `interleaved`. */
QPT_API qpt_status qpt_state_copy_amplitudes(const qpt_state* state, double* interleaved);

/* |<a|b>|, insensitive to global phase. */
QPT_API qpt_status qpt_state_fidelity(const qpt_state* a, const qpt_state* b, double* out);

/* DFT over the whole register (inverse != 0 applies the adjoint). */
QPT_API qpt_status qpt_state_qft(const qpt_state* state, int inverse, qpt_state** out);

/* ---- protocol ----------------------------------------------------------- */

typedef struct qpt_protocol_config {
    double delta;      /* per-cycle phase step; ignored when use_alpha != 0 */
    double alpha;      /* total coefficient; used when use_alpha != 0 */
    int cycles;        /* >= 1 */
    int use_alpha;     /* nonzero: delta = alpha / cycles */
    int mode;          /* qpt_protocol_mode */
    int completion;    /* qpt_completion */
    uint64_t seed;     /* sampled mode only */
} qpt_protocol_config;

typedef struct qpt_protocol_stats {
    int cycles_run;
    int failed_at; /* -1 when no cycle failed */
    double total_success_probability;
} qpt_protocol_stats;

QPT_API qpt_status qpt_protocol_run(const qpt_state* psi, const qpt_state* phi,
                            const qpt_protocol_config* config, qpt_state** final_state,
                            qpt_protocol_stats* stats);

/* Runs the protocol and writes the result document (JSON: mode, delta,
 * cycles, failed_at, total_success_probability, final amplitudes). */
QPT_API qpt_status qpt_protocol_run_to_file(const qpt_state* psi, const qpt_state* phi,
                                    const qpt_protocol_config* config, const char* path);

QPT_API qpt_status qpt_exact_success_probability(const qpt_state* psi, const qpt_state* phi, double delta,
                                         double* out);

/* Writes dim probabilities indexed by the measurement outcome. */
QPT_API qpt_status qpt_exact_outcome_distribution(const qpt_state* psi, const qpt_state* phi, double delta,
                                          int completion, double* probabilities);

QPT_API qpt_status qpt_exact_postselected_state(const qpt_state* psi, const qpt_state* phi, double delta,
                                        qpt_state** out);

/* ---- curve fitting ------------------------------------------------------ */

typedef struct qpt_fit_result {
    double a, b, c;
    double stderr_a, stderr_b, stderr_c; /* infinity flags an unidentifiable parameter */
    double residual_norm;
    int converged;
    int iterations;
} qpt_fit_result;

/* Fits 1 - a sin^2(b delta/2 - c). weights may be NULL (uniform). */
QPT_API qpt_status qpt_fit_success_curve(const double* deltas, const double* probabilities,
                                 const double* weights, size_t n_points, qpt_fit_result* out);

QPT_API double qpt_model_eval(double a, double b, double c, double delta);

/* Reads a sweep CSV (delta, p_mean, p_std, p_exact), fits the model with
 * 1/p_std^2 weights, and optionally writes the fit document. */
QPT_API qpt_status qpt_fit_sweep_csv(const char* csv_path, int format, const char* output_path_or_null,
                             qpt_fit_result* out);

/* ---- experiments --------------------------------------------------------- */

typedef struct qpt_demo_config {
    int n_qubits;
    double delta;
    int cycles;
} qpt_demo_config;

typedef struct qpt_demo_summary {
    double alpha;
    double fidelity_vs_ideal;
    double max_deviation_vs_exact_map;
    double total_success_probability;
} qpt_demo_summary;

/* Quadratic-phase demonstration: uniform input state, linearly growing
 * software state, postselected protocol run. Writes the per-x report. */
QPT_API qpt_status qpt_demo_quadratic(const qpt_demo_config* config, int format, const char* output_path,
                              qpt_demo_summary* summary_or_null);

typedef struct qpt_sweep_config {
    int n_qubits;
    double delta_min, delta_max;
    int delta_points;
    int n_shot;
    int n_repetition;
    uint64_t seed;
    int mode; /* 0 sampled, 1 exact */
    int completion;
} qpt_sweep_config;

/* Success-probability sweep over delta plus the model fit. */
QPT_API qpt_status qpt_sweep_success(const qpt_sweep_config* config, int format, const char* output_path,
                             qpt_fit_result* fit_or_null);

/* ---- Hamiltonian simulation ---------------------------------------------- */

/* Evolves a state under a split-step spec file (JSON: n, potential, kinetic,
 * t, m). initial_path NULL evolves a centered Gaussian packet. Writes the
 * final state as an amplitude-vector file and reports the fidelity against
 * the dense matrix-exponential reference. */
QPT_API qpt_status qpt_trotter_evolve(const char* spec_path, const char* initial_path_or_null,
                              int phase_mode, double max_cycle_delta, const char* output_path,
                              double* fidelity_vs_dense_or_null);

/* ---- verification --------------------------------------------------------- */

/* Runs the property suites ("core", "partial-phase", "protocol",
 * "hamiltonian" or "all"); writes a JSON summary when output_path is not
 * NULL, prints one line per check to stdout when verbose is nonzero, and
 * reports the number of failed checks. */
QPT_API qpt_status qpt_verify(const char* suite, const char* output_path_or_null, int verbose,
                      int* n_failed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QPT_QPT_H */
