#ifndef KNOTPOLY_H
#define KNOTPOLY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KpStatus {
  KP_STATUS_OK = 0,
  KP_STATUS_INVALID_INPUT = 1,
  KP_STATUS_INTERNAL = 2,
  KP_STATUS_NULL_POINTER = 3,
  KP_STATUS_PANIC = 4,
} KpStatus;

// A signed multigraph.
typedef struct KpGraph KpGraph;

// A Laurent polynomial with integer coefficients.
typedef struct KpPoly KpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL.
// The pointer stays valid until the next `kp_*` call on this thread.
const char *kp_last_error_message(void);

// Parses a signed graph from its JSON description.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum KpStatus kp_graph_from_json(const char *json, struct KpGraph **out);

// # Safety
// `graph` must come from `kp_graph_from_json` and not be freed twice.
void kp_graph_free(struct KpGraph *graph);

// `Q[G]` in `A`, `B`, `d`.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum KpStatus kp_q_poly(const struct KpGraph *graph, struct KpPoly **out);

// The Kauffman bracket, a Laurent polynomial in `A`.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum KpStatus kp_kauffman_bracket(const struct KpGraph *graph, struct KpPoly **out);

// Jones polynomial of the graph's link for the given writhe, as a string
// in `t` with quarter-integer exponents. Free with `kp_string_free`.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum KpStatus kp_jones_string(const struct KpGraph *graph, int64_t writhe, char **out);

// Bracket of the rational link with word `terms[0..len]`.
//
// # Safety
// `terms` must point to `len` readable integers and `out` be a valid pointer.
enum KpStatus kp_bracket_rational(const int32_t *terms, size_t len, struct KpPoly **out);

// Bracket of the theta link `L(m1, m2, m3)`.
//
// # Safety
// `out` must be a valid pointer.
enum KpStatus kp_bracket_theta(int32_t m1, int32_t m2, int32_t m3, struct KpPoly **out);

// Canonical string of a polynomial, e.g. `-A^4 - A^-4`. Free with
// `kp_string_free`. Returns NULL for a NULL handle.
//
// # Safety
// `poly` must be NULL or a live handle.
char *kp_poly_to_string(const struct KpPoly *poly);

// # Safety
// `poly` must be NULL or a handle not yet freed.
void kp_poly_free(struct KpPoly *poly);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void kp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNOTPOLY_H */
