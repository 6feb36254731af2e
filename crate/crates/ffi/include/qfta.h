/* C interface for the qfta fault tree analysis toolkit. */

#ifndef QFTA_H
#define QFTA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum QftaStatus {
  QftaStatus_Ok = 0,
  QftaStatus_NullArgument = 1,
  QftaStatus_InvalidUtf8 = 2,
  QftaStatus_ParseError = 3,
  QftaStatus_ValidationError = 4,
  QftaStatus_RuntimeError = 5,
} QftaStatus;

/**
 * Opaque compiled quantum circuit with its qubit map.
 */
typedef struct QftaCircuit QftaCircuit;

/**
 * Opaque parsed fault tree.
 */
typedef struct QftaFaultTree QftaFaultTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last error on this thread, or NULL if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *qfta_last_error(void);

/**
 * Parses and validates a fault tree from NUL-terminated text.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be a valid
 * pointer. On success `*out` owns the tree and must be released with
 * [`qfta_tree_free`].
 */
enum QftaStatus qfta_tree_parse(const char *text, struct QftaFaultTree **out);

/**
 * Releases a tree handle. NULL is ignored.
 *
 * # Safety
 * `tree` must be NULL or a pointer obtained from [`qfta_tree_parse`], not
 * yet freed.
 */
void qfta_tree_free(struct QftaFaultTree *tree);

/**
 * Number of basic events (leaves). Returns 0 on NULL.
 *
 * # Safety
 * `tree` must be NULL or a live tree handle.
 */
uintptr_t qfta_tree_basic_event_count(const struct QftaFaultTree *tree);

/**
 * Number of logic gates. Returns 0 on NULL.
 *
 * # Safety
 * `tree` must be NULL or a live tree handle.
 */
uintptr_t qfta_tree_gate_count(const struct QftaFaultTree *tree);

/**
 * Closed-form TOP failure probability. Fails with a validation error on
 * trees that share a basic event between gates.
 *
 * # Safety
 * `tree` must be a live tree handle and `out` a valid pointer.
 */
enum QftaStatus qfta_tree_analytic_top(const struct QftaFaultTree *tree, double *out);

/**
 * Exact TOP failure probability by enumerating all basic-event assignments.
 * Valid for up to 20 basic events; handles shared events.
 *
 * # Safety
 * `tree` must be a live tree handle and `out` a valid pointer.
 */
enum QftaStatus qfta_tree_brute_force_top(const struct QftaFaultTree *tree, double *out);

/**
 * Compiles the tree into a quantum circuit.
 *
 * # Safety
 * `tree` must be a live tree handle; `out` must be valid. On success `*out`
 * must be released with [`qfta_circuit_free`].
 */
enum QftaStatus qfta_tree_compile(const struct QftaFaultTree *tree, struct QftaCircuit **out);

/**
 * Releases a circuit handle. NULL is ignored.
 *
 * # Safety
 * `circuit` must be NULL or a pointer obtained from [`qfta_tree_compile`],
 * not yet freed.
 */
void qfta_circuit_free(struct QftaCircuit *circuit);

/**
 * Total qubit count (basic events plus gate outputs). Returns 0 on NULL.
 *
 * # Safety
 * `circuit` must be NULL or a live circuit handle.
 */
uintptr_t qfta_circuit_qubit_count(const struct QftaCircuit *circuit);

/**
 * Index of the qubit carrying the TOP event. Returns 0 on NULL.
 *
 * # Safety
 * `circuit` must be NULL or a live circuit handle.
 */
uintptr_t qfta_circuit_top_qubit(const struct QftaCircuit *circuit);

/**
 * Exact TOP failure probability from the final statevector marginal.
 *
 * # Safety
 * `circuit` must be a live circuit handle and `out` a valid pointer.
 */
enum QftaStatus qfta_circuit_exact_top(const struct QftaCircuit *circuit, double *out);

/**
 * Seeded shot-sampled estimate of the TOP failure probability.
 *
 * # Safety
 * `circuit` must be a live circuit handle and `out` a valid pointer.
 */
enum QftaStatus qfta_circuit_sample_top(const struct QftaCircuit *circuit,
                                        uint64_t shots,
                                        uint64_t seed,
                                        uint32_t workers,
                                        double *out);

/**
 * Circuit as text, one op per line. The returned string must be released
 * with [`qfta_string_free`]. Returns NULL on NULL input.
 *
 * # Safety
 * `circuit` must be NULL or a live circuit handle.
 */
char *qfta_circuit_dump(const struct QftaCircuit *circuit);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a pointer returned by [`qfta_circuit_dump`], not yet
 * freed.
 */
void qfta_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QFTA_H */
