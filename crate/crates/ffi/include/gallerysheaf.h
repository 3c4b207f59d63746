#ifndef GALLERYSHEAF_H
#define GALLERYSHEAF_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  GS_STATUS_OK = 0,
  /**
   * Bad input: unknown type, letter out of range, envelope exceeded.
   */
  GS_STATUS_CONFIG_ERROR = 1,
  /**
   * A checked identity failed.
   */
  GS_STATUS_INVARIANT_ERROR = 2,
  GS_STATUS_NULL_POINTER = 3,
  GS_STATUS_INVALID_UTF8 = 4,
  GS_STATUS_PANIC = 5,
} GsStatus;

/**
 * The galleries of a word.
 */
typedef struct GsGalleries GsGalleries;

/**
 * A root system with its Weyl group.
 */
typedef struct GsRootSystem GsRootSystem;

/**
 * The sheaf of fibre modules of a word.
 */
typedef struct GsSheaf GsSheaf;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *gs_last_error_message(void);

/**
 * Creates a root system of the given type letter (`'A'`..`'G'`) and rank.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
GsStatus gs_root_system_new(char type_letter, uint32_t rank, GsRootSystem **out);

/**
 * # Safety
 * `h` must be null or a handle from [`gs_root_system_new`] not yet freed.
 */
void gs_root_system_free(GsRootSystem *h);

/**
 * Order of the Weyl group.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
GsStatus gs_root_system_weyl_order(const GsRootSystem *h, uint64_t *out);

/**
 * Number of positive roots.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
GsStatus gs_root_system_num_positive_roots(const GsRootSystem *h, uint32_t *out);

/**
 * Enumerates the galleries of a word given as 1-based letters.
 *
 * # Safety
 * `rs` must be a live handle, `letters` must hold `len` bytes and `out`
 * must be writable.
 */
GsStatus gs_galleries_new(const GsRootSystem *rs,
                          const uint8_t *letters,
                          uintptr_t len,
                          GsGalleries **out);

/**
 * # Safety
 * `h` must be null or a handle from [`gs_galleries_new`] not yet freed.
 */
void gs_galleries_free(GsGalleries *h);

/**
 * Number of galleries, `2^r`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
GsStatus gs_galleries_count(const GsGalleries *h, uint64_t *out);

/**
 * Number of distinct endpoints.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
GsStatus gs_galleries_support_size(const GsGalleries *h, uint64_t *out);

/**
 * Load-bearing and defect masks of the gallery with the given bits
 * (bit `i-1` set when step `i` crosses).
 *
 * # Safety
 * `h` must be a live handle; `j` and `d` must be writable.
 */
GsStatus gs_galleries_stats(const GsGalleries *h, uint32_t bits, uint32_t *j, uint32_t *d);

/**
 * Builds the sheaf of fibre modules of a word.
 *
 * # Safety
 * `rs` must be a live handle, `letters` must hold `len` bytes and `out`
 * must be writable.
 */
GsStatus gs_sheaf_new(const GsRootSystem *rs, const uint8_t *letters, uintptr_t len, GsSheaf **out);

/**
 * # Safety
 * `h` must be null or a handle from [`gs_sheaf_new`] not yet freed.
 */
void gs_sheaf_free(GsSheaf *h);

/**
 * Stalk rank at the element with the given id (0 is the identity).
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
GsStatus gs_sheaf_stalk_rank(const GsSheaf *h, uint32_t elem, uint32_t *out);

/**
 * Number of minimal generators of the global sections, searched up to
 * `max_degree`, after cross-checking against the total-space congruences.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
GsStatus gs_sheaf_global_section_rank(const GsSheaf *h, uint32_t max_degree, uint64_t *out);

/**
 * Whether the purity axioms hold up to `max_degree`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
GsStatus gs_sheaf_is_pure(const GsSheaf *h, uint32_t max_degree, bool *out);

/**
 * Decomposition formula such as `B(s1s2s1) ⊕ B(s1)⟨1⟩`, as a new string
 * to be released with [`gs_string_free`].
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
GsStatus gs_sheaf_decompose(const GsSheaf *h, char **out);

/**
 * Runs a job given as `key=value` text. The report is returned as a new
 * string and the exit status (0, 1 or 2) through `status`.
 *
 * # Safety
 * `config` must be a nul-terminated string; `report` and `status` writable.
 */
GsStatus gs_run_job(const char *config, char **report, int32_t *status);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void gs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GALLERYSHEAF_H */
