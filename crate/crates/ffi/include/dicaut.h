#ifndef DICAUT_H
#define DICAUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DicautStatus {
  DICAUT_STATUS_OK = 0,
  DICAUT_STATUS_NULL_POINTER = 1,
  DICAUT_STATUS_INVALID_UTF8 = 2,
  DICAUT_STATUS_PARSE = 3,
  DICAUT_STATUS_DOMAIN = 4,
  DICAUT_STATUS_OUT_OF_RANGE = 5,
  DICAUT_STATUS_CAP_EXCEEDED = 6,
  DICAUT_STATUS_CONTAINMENT_VIOLATION = 7,
  DICAUT_STATUS_BUFFER_TOO_SMALL = 8,
  DICAUT_STATUS_ABORTED = 9,
  DICAUT_STATUS_IO = 10,
  DICAUT_STATUS_PANIC = 11,
} DicautStatus;

typedef enum DicautVerdict {
  DICAUT_VERDICT_EQUAL = 0,
  DICAUT_VERDICT_PROPER_SUPERGROUP = 1,
} DicautVerdict;

/**
 * Opaque group handle.
 */
typedef struct DicautGroup DicautGroup;

/**
 * One classified set. Orders above `u64::MAX` are reported as `u64::MAX`
 * with the matching `_saturated` flag set; the JSON form is exact.
 */
typedef struct DicautClassification {
  uint64_t aut_order;
  bool aut_order_saturated;
  uint64_t b_order;
  bool b_order_saturated;
  enum DicautVerdict verdict;
} DicautClassification;

/**
 * Receives each record as a NUL-terminated JSON line. A nonzero return
 * stops the run with `DICAUT_STATUS_ABORTED`.
 */
typedef int32_t (*DicautRecordCallback)(const char *record_json, void *user_data);

typedef struct DicautSummary {
  uint64_t n;
  uint64_t m;
  uint64_t total;
  uint64_t exceptional;
  double proportion;
  double ci_halfwidth;
  /**
   * The ε fields below are meaningful only when this is set
   * (exhaustive undirected runs).
   */
  bool has_bound;
  double bound_log2;
  bool vacuous;
  bool satisfied;
} DicautSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *dicaut_version(void);

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call into the library on the same thread.
 */
const char *dicaut_last_error(void);

/**
 * Parses a group spec such as `q8e:1` or `dic:C6:y=3`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DicautStatus dicaut_group_new(const char *spec, struct DicautGroup **out);

/**
 * Releases a handle from [`dicaut_group_new`]. Null is ignored.
 *
 * # Safety
 * `group` must be null or a live handle not used afterwards.
 */
void dicaut_group_free(struct DicautGroup *group);

/**
 * Writes the canonical spec string into `buf` (NUL-terminated). `needed`,
 * if non-null, receives the required size including the NUL.
 *
 * # Safety
 * `buf` must point to `len` writable bytes, or be null with `len == 0`.
 */
enum DicautStatus dicaut_group_spec(const struct DicautGroup *group,
                                    char *buf,
                                    size_t len,
                                    size_t *needed);

/**
 * `n = |R|`.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum DicautStatus dicaut_group_order(const struct DicautGroup *group, uint64_t *out);

/**
 * `m`, the number of elements of order at most 2.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum DicautStatus dicaut_group_m(const struct DicautGroup *group, uint64_t *out);

/**
 * Whether the group is isomorphic to `Q8 × C2^ℓ`.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum DicautStatus dicaut_group_is_q8e(const struct DicautGroup *group, bool *out);

/**
 * log₂ of the number of inverse-closed subsets.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum DicautStatus dicaut_group_inverse_closed_log2(const struct DicautGroup *group, uint64_t *out);

/**
 * Classifies the set given as a lowercase hex bitmask (bit i = element i).
 *
 * # Safety
 * `group` must be a live handle, `set_hex` NUL-terminated, `out` valid.
 */
enum DicautStatus dicaut_classify(const struct DicautGroup *group,
                                  const char *set_hex,
                                  bool directed,
                                  struct DicautClassification *out);

/**
 * As [`dicaut_classify`], writing the JSON record into `buf`. The record's
 * `elapsed_us` is always 0 here.
 * Returns `DICAUT_STATUS_BUFFER_TOO_SMALL` with `*needed` set when `len`
 * is insufficient.
 *
 * # Safety
 * `buf` must point to `len` writable bytes, or be null with `len == 0`.
 */
enum DicautStatus dicaut_classify_json(const struct DicautGroup *group,
                                       const char *set_hex,
                                       bool directed,
                                       char *buf,
                                       size_t len,
                                       size_t *needed);

/**
 * Classifies every inverse-closed set (or every subset when `directed`).
 * `jobs == 0` uses the available parallelism. `callback` may be null.
 *
 * # Safety
 * `group` must be a live handle and `out` valid; `callback` must be safe
 * to call with `user_data` from the calling thread.
 */
enum DicautStatus dicaut_census_exhaustive(const struct DicautGroup *group,
                                           bool directed,
                                           uint32_t jobs,
                                           DicautRecordCallback callback,
                                           void *user_data,
                                           struct DicautSummary *out);

/**
 * `trials` seeded uniform draws.
 *
 * # Safety
 * As for [`dicaut_census_exhaustive`].
 */
enum DicautStatus dicaut_census_sampled(const struct DicautGroup *group,
                                        uint64_t trials,
                                        uint64_t seed,
                                        bool directed,
                                        uint32_t jobs,
                                        DicautRecordCallback callback,
                                        void *user_data,
                                        struct DicautSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DICAUT_H */
