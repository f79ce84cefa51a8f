/*
 Copyright 2026 The qbot Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

/*
 * C interface to libqbot: X-family circuit simulation, multi-controlled NOT
 * lowering, the vehicle controller and grid-world episodes.
 *
 * Every function returns a qbot_status. On failure, qbot_last_error() holds a
 * message for the calling thread until its next failing call. Strings handed
 * out through `char **` parameters are owned by the caller and released with
 * qbot_string_free(). Handles are released with their matching _free call.
 *
 * Bit strings follow three conventions:
 *   - register strings list qubit 0 first ("0101" sets q[1] and q[3]);
 *   - sensor words are S1S2S3S4 (front, back, left, right), 1 = clear;
 *   - actuator strings are six characters ASK MU MR_B MR_A ML_B ML_A.
 */
#ifndef QBOT_QBOT_H
#define QBOT_QBOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QBOT_BUILDING_LIBRARY)
#define QBOT_API __declspec(dllexport)
#else
#define QBOT_API __declspec(dllimport)
#endif
#else
#define QBOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qbot_status {
    QBOT_OK = 0,
    QBOT_ERR_INVALID_ARGUMENT = 1,
    QBOT_ERR_CAPACITY = 2,
    QBOT_ERR_STRUCTURAL = 3,
    QBOT_ERR_PARSE = 4,
    QBOT_ERR_NUMERICAL = 5,
    QBOT_ERR_CORRUPT_CONTROLLER = 6,
    QBOT_ERR_INVALID_CHOICE = 7,
    QBOT_ERR_STATE = 8,
    QBOT_ERR_POLICY = 9,
    QBOT_ERR_REPLAY = 10,
    QBOT_ERR_CONTRACT = 11,
    QBOT_ERR_IO = 12,
    QBOT_ERR_INTERNAL = 99
} qbot_status;

QBOT_API const char *qbot_version(void);
QBOT_API const char *qbot_status_name(qbot_status status);
QBOT_API const char *qbot_last_error(void);
QBOT_API void qbot_string_free(char *str);

/* ---- circuits ------------------------------------------------------------ */

typedef struct qbot_circuit qbot_circuit;

typedef struct qbot_circuit_info {
    size_t num_qubits;
    size_t num_gates;
    size_t max_controls;
    int native;        /* 1 when no gate has more than two controls */
    int has_registers; /* 1 when a register map is attached */
} qbot_circuit_info;

/* The built-in 13 qubit vehicle controller. omit_segment < 0 keeps every
 * segment; otherwise that input row's segment is dropped (fault injection). */
QBOT_API qbot_status qbot_controller_circuit(int lowered, int omit_segment, qbot_circuit **out);
/* Synthesizes a 4-input, 6-output truth table (text format) over the vehicle
 * registers. */
QBOT_API qbot_status qbot_controller_from_table(const char *table_text, int lowered, qbot_circuit **out);
/* Lowered k-control NOT: controls q0..q(k-1), k-1 ancillas (k >= 3), target last. */
QBOT_API qbot_status qbot_mcx_plan(int k, qbot_circuit **out);
QBOT_API qbot_status qbot_circuit_parse_qasm(const char *text, qbot_circuit **out);
QBOT_API qbot_status qbot_circuit_to_qasm(const qbot_circuit *circuit, char **out);
QBOT_API qbot_status qbot_circuit_info_get(const qbot_circuit *circuit, qbot_circuit_info *out);
/* Register sidecar JSON:
 * {"sensors":[0,1,2,3],"ancillas":[4,5,6],"ml":[7,8],"mr":[9,10],"mu":11,"ask":12} */
QBOT_API qbot_status qbot_circuit_set_registers_json(qbot_circuit *circuit, const char *json);
QBOT_API qbot_status qbot_circuit_registers_json(const qbot_circuit *circuit, char **out);
/* Classical fast path. input_bits is a register string of num_qubits chars. */
QBOT_API qbot_status qbot_circuit_run_basis(const qbot_circuit *circuit, const char *input_bits, char **output_bits);
/* Full state-vector execution followed by a seeded measurement. */
QBOT_API qbot_status qbot_circuit_run_statevector(
    const qbot_circuit *circuit, const char *input_bits, uint64_t seed, char **output_bits);
/* Actuator string of a register readout, using the attached register map. */
QBOT_API qbot_status qbot_circuit_actuator_string(const qbot_circuit *circuit, const char *register_bits, char out[7]);
/* Evaluates a controller (with register map) on a sensor word. */
QBOT_API qbot_status qbot_controller_evaluate(const qbot_circuit *circuit, const char *sensors, char out[7]);
QBOT_API void qbot_circuit_free(qbot_circuit *circuit);

/* ---- verification -------------------------------------------------------- */

typedef struct qbot_verify_row {
    char sensors[5];  /* S1S2S3S4 */
    char expected[7]; /* from the built-in truth table */
    char computed[7]; /* from the circuit; "??????" if it could not be decoded */
    int pass;
} qbot_verify_row;

/* Evaluates all 16 sensor words: |0000>, the four single-clear words
 * |0001> |0010> |0100> |1000>, then the multi-clear words. passed receives
 * the number of matching rows. */
QBOT_API qbot_status qbot_verify_controller(const qbot_circuit *circuit, qbot_verify_row rows[16], int *passed);

typedef struct qbot_mcx_report {
    int k;
    int ancillas;
    int ccx;
    int cx;
    int cases;
    int matches;
    int passed;
    char counterexample[160];
} qbot_mcx_report;

QBOT_API qbot_status qbot_verify_mcx(int k, qbot_mcx_report *out);

/* ---- episodes ------------------------------------------------------------ */

typedef struct qbot_episode_config {
    const char *map_text;
    int max_steps;      /* < 0 selects the default of 1000 */
    const char *policy; /* "interactive", "first-clear" or "script:FBL..."; NULL = interactive */
    uint64_t seed;
} qbot_episode_config;

typedef struct qbot_episode qbot_episode;

QBOT_API qbot_status qbot_episode_start(const qbot_episode_config *config, qbot_episode **out);
/* Advances one decision. *message receives a "record" or an "ask" protocol
 * message. Non-interactive policies answer asks themselves. */
QBOT_API qbot_status qbot_episode_step(qbot_episode *episode, char **message);
QBOT_API qbot_status qbot_episode_answer(qbot_episode *episode, char direction, char **record);
/* "running", "awaiting_answer" or "terminated". */
QBOT_API qbot_status qbot_episode_status(const qbot_episode *episode, char **status);
QBOT_API qbot_status qbot_episode_trace_jsonl(const qbot_episode *episode, char **jsonl);
QBOT_API qbot_status qbot_episode_render(const qbot_episode *episode, char **map_text);
QBOT_API void qbot_episode_free(qbot_episode *episode);

/* Headless run; the policy must not be interactive. */
QBOT_API qbot_status qbot_run_episode(const qbot_episode_config *config, char **trace_jsonl);
/* Validates a JSONL trace against a freshly built controller. map_text may be
 * NULL. *records receives the number of records checked. */
QBOT_API qbot_status qbot_replay_trace(const char *trace_jsonl, const char *map_text, size_t *records);

/* ---- live protocol ------------------------------------------------------- */

typedef struct qbot_protocol qbot_protocol;

QBOT_API qbot_status qbot_protocol_new(qbot_protocol **out);
/* Handles one client line; *replies receives newline-terminated reply lines. */
QBOT_API qbot_status qbot_protocol_handle(qbot_protocol *protocol, const char *line, char **replies);
QBOT_API void qbot_protocol_free(qbot_protocol *protocol);

typedef struct qbot_server qbot_server;

/* Listens on 127.0.0.1:port; port 0 picks a free port. */
QBOT_API qbot_status qbot_server_start(int port, qbot_server **out);
QBOT_API int qbot_server_port(const qbot_server *server);
/* Blocks until qbot_server_stop is called from another thread. */
QBOT_API qbot_status qbot_server_wait(qbot_server *server);
QBOT_API qbot_status qbot_server_stop(qbot_server *server);
QBOT_API void qbot_server_free(qbot_server *server);

#ifdef __cplusplus
}
#endif

#endif
