/* C interface for the netlts library. See netlts_* function docs. */

#ifndef NETLTS_H
#define NETLTS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a C-ABI call. `Ok` means the computation completed; consult the
// returned JSON for mathematical verdicts.
typedef enum NetltsStatus {
  NETLTS_STATUS_OK = 0,
  // A required pointer argument was NULL.
  NETLTS_STATUS_NULL_POINTER = 1,
  // An input string was not valid UTF-8.
  NETLTS_STATUS_INVALID_UTF8 = 2,
  // An input document failed to parse or had the wrong shape.
  NETLTS_STATUS_MALFORMED = 3,
  NETLTS_STATUS_DIMENSION_MISMATCH = 4,
  NETLTS_STATUS_INDEX_OUT_OF_RANGE = 5,
  // An input algebra or action violates its defining identities.
  NETLTS_STATUS_AXIOMS_FAILED = 6,
  // A documented precondition of the operation does not hold.
  NETLTS_STATUS_PRECONDITION = 7,
  NETLTS_STATUS_NOT_INVERTIBLE = 8,
  NETLTS_STATUS_UNSUPPORTED_DEGREE = 9,
  NETLTS_STATUS_INTERNAL = 10,
  // A panic was caught at the ABI boundary.
  NETLTS_STATUS_PANIC = 11,
} NetltsStatus;

// Opaque handle bundling the target triple system, the source triple system,
// and a verified coherent action between them.
typedef struct NetltsContext NetltsContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the underlying library, as a static string. Do not free.
const char *netlts_version(void);

// Description of the most recent failure on this thread, or NULL if the last
// call succeeded. The pointer stays valid until the next failing call on the
// same thread; do not free it.
const char *netlts_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a pointer previously returned through an `out`
// parameter of this library, not yet freed.
void netlts_string_free(char *s);

// Builds a verified context from three JSON documents: the target triple
// system, the source triple system, and the action tensor. Verifies the
// triple-system axioms of both algebras and the coherence of the action;
// returns `AxiomsFailed` if any identity is violated.
//
// On success `*out` owns a new handle; release it with
// [`netlts_context_free`].
//
// # Safety
// String arguments must be NULL or NUL-terminated; `out` must be a valid
// pointer to writable storage.
enum NetltsStatus netlts_context_new(const char *target_json,
                                     const char *source_json,
                                     const char *action_json,
                                     struct NetltsContext **out);

// Releases a context handle. NULL is ignored.
//
// # Safety
// `ctx` must be NULL or a handle from [`netlts_context_new`], not yet freed.
void netlts_context_free(struct NetltsContext *ctx);

// Checks whether the linear map in `map_json` satisfies the structure
// equation (2.14) in the given context. Writes a verdict document to
// `*out_json`; its `"pass"` field carries the answer and, on failure, a
// witness pinpoints the first violated basis triple.
//
// # Safety
// `ctx` must be a live handle; `map_json` a NUL-terminated string; `out_json`
// valid writable storage.
enum NetltsStatus netlts_net_check(const struct NetltsContext *ctx,
                                   const char *map_json,
                                   char **out_json);

// Computes the descendent 3-Leibniz algebra of a verified structure map and
// writes it as an algebra document (kind `"3leibniz"`). Returns
// `Precondition` if the map fails the structure equation.
//
// # Safety
// Same contract as [`netlts_net_check`].
enum NetltsStatus netlts_descendent(const struct NetltsContext *ctx,
                                    const char *map_json,
                                    char **out_json);

// Computes cochain, cocycle, coboundary, and quotient dimensions of the
// complex induced by a verified structure map at the given degree
// (0, 1, or 2; degree 3 additionally requires `enable_degree_3`).
//
// # Safety
// Same contract as [`netlts_net_check`].
enum NetltsStatus netlts_cohomology(const struct NetltsContext *ctx,
                                    const char *map_json,
                                    uint32_t degree,
                                    bool enable_degree_3,
                                    char **out_json);

// Checks whether `direction_json` is an infinitesimal deformation of the
// verified structure map: the three coefficient equations (5.1)-(5.3) are
// reported separately in the verdict document.
//
// # Safety
// Same contract as [`netlts_net_check`], plus `direction_json` must be a
// NUL-terminated string.
enum NetltsStatus netlts_deform_check(const struct NetltsContext *ctx,
                                      const char *map_json,
                                      const char *direction_json,
                                      char **out_json);

// Checks whether two infinitesimal deformations are equivalent via the
// wedge pair in `pair_json` (equations (5.4)-(5.6)). Both directions must
// individually pass the deformation equations; otherwise `Precondition`.
//
// # Safety
// Same contract as [`netlts_deform_check`], plus `t1_tilde_json` and
// `pair_json` must be NUL-terminated strings.
enum NetltsStatus netlts_equivalence_check(const struct NetltsContext *ctx,
                                           const char *map_json,
                                           const char *t1_json,
                                           const char *t1_tilde_json,
                                           const char *pair_json,
                                           char **out_json);

// Checks the Nijenhuis conditions (5.4), (5.5), (5.7) for a wedge pair of
// target-algebra vectors against the verified structure map.
//
// # Safety
// Same contract as [`netlts_net_check`], plus `pair_json` must be a
// NUL-terminated string.
enum NetltsStatus netlts_nijenhuis_check(const struct NetltsContext *ctx,
                                         const char *map_json,
                                         const char *pair_json,
                                         char **out_json);

// Produces the trivial infinitesimal deformation generated by a Nijenhuis
// wedge pair and writes it as a matrix document. Returns `Precondition`
// when the pair is not Nijenhuis.
//
// # Safety
// Same contract as [`netlts_nijenhuis_check`].
enum NetltsStatus netlts_trivial_deform(const struct NetltsContext *ctx,
                                        const char *map_json,
                                        const char *pair_json,
                                        char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NETLTS_H */
