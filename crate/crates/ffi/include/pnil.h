#ifndef PNIL_H
#define PNIL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum {
  PNIL_STATUS_OK = 0,
  PNIL_STATUS_NULL_POINTER = 1,
  PNIL_STATUS_INVALID_ARGUMENT = 2,
  PNIL_STATUS_PARSE = 3,
  PNIL_STATUS_INVALID_STRUCTURE = 4,
  PNIL_STATUS_BUDGET_EXCEEDED = 5,
  PNIL_STATUS_HYPOTHESIS_VIOLATION = 6,
  PNIL_STATUS_IO = 7,
  PNIL_STATUS_PANIC = 8,
} PnilStatus;

/**
 * Opaque group handle.
 */
typedef struct PnilGroup PnilGroup;

/**
 * Opaque ring handle.
 */
typedef struct PnilRing PnilRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *pnil_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pnil_string_free(char *s);

/**
 * Builds a ring from a builtin spec such as `3z27`.
 *
 * # Safety
 * `spec` must be a valid C string and `out` valid for writes.
 */
PnilStatus pnil_ring_from_spec(const char *spec, PnilRing **out);

/**
 * Builds a ring from `{"p": .., "exps": [..], "mul": [[[..]]]}`.
 *
 * # Safety
 * `json` must be a valid C string and `out` valid for writes.
 */
PnilStatus pnil_ring_from_json(const char *json, PnilRing **out);

/**
 * # Safety
 * `ring` must be null or a live handle from this library.
 */
void pnil_ring_free(PnilRing *ring);

/**
 * Writes the number of elements.
 *
 * # Safety
 * The handle must be null or live; `out` must be null or valid for writes.
 */
PnilStatus pnil_ring_order(const PnilRing *ring, size_t *out);

/**
 * Writes the p-nil flags: bit 0 left, bit 1 right.
 *
 * # Safety
 * The handle must be null or live; `out` must be null or valid for writes.
 */
PnilStatus pnil_ring_p_nil_flags(const PnilRing *ring, uint32_t *out);

/**
 * The ring profile as a JSON object; release with `pnil_string_free`.
 *
 * # Safety
 * The handle must be null or live; `out` must be null or valid for writes.
 */
PnilStatus pnil_ring_profile_json(const PnilRing *ring, char **out);

/**
 * Builds a group from a builtin spec such as `q8` or `c4xc2`.
 *
 * # Safety
 * `spec` must be a valid C string and `out` valid for writes.
 */
PnilStatus pnil_group_from_spec(const char *spec, PnilGroup **out);

/**
 * Builds a group from a Cayley table or permutation-generator JSON file body.
 *
 * # Safety
 * `json` must be a valid C string and `out` valid for writes.
 */
PnilStatus pnil_group_from_json(const char *json, PnilGroup **out);

/**
 * # Safety
 * `group` must be null or a live handle from this library.
 */
void pnil_group_free(PnilGroup *group);

/**
 * Writes the number of elements.
 *
 * # Safety
 * The handle must be null or live; `out` must be null or valid for writes.
 */
PnilStatus pnil_group_order(const PnilGroup *group, size_t *out);

/**
 * The p-group profile as a JSON object; release with `pnil_string_free`.
 *
 * # Safety
 * The handle must be null or live; `out` must be null or valid for writes.
 */
PnilStatus pnil_group_profile_json(const PnilGroup *group, char **out);

/**
 * `|Aut(G)|`; `bound` caps the group order searched (0 selects the default).
 *
 * # Safety
 * The handle must be null or live; `out` must be null or valid for writes.
 */
PnilStatus pnil_group_aut_order(const PnilGroup *group, size_t bound, size_t *out);

/**
 * Runs checks over a manifest (null selects the builtin corpus). `checks`
 * is a comma list or null for all. Writes the JSON-lines report and the
 * number of non-probe failures.
 *
 * # Safety
 * `manifest_json` and `checks` must be null or valid C strings; `report`
 * and `failures` must be valid for writes.
 */
PnilStatus pnil_verify(const char *manifest_json,
                       const char *checks,
                       size_t jobs,
                       char **report,
                       size_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PNIL_H */
