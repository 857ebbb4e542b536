#ifndef SQDIST_H
#define SQDIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SqdistStatus {
  SQDIST_STATUS_OK = 0,
  SQDIST_STATUS_NULL_POINTER = 1,
  SQDIST_STATUS_INVALID_PARTITION = 2,
  SQDIST_STATUS_INVALID_ARGUMENT = 3,
  SQDIST_STATUS_DOMAIN_ERROR = 4,
  SQDIST_STATUS_VERIFICATION_FAILED = 5,
  SQDIST_STATUS_PANIC = 6,
} SqdistStatus;

/**
 * Opaque partition handle.
 */
typedef struct SqdistPartition SqdistPartition;

typedef struct SqdistShape {
  size_t n;
  size_t t;
  size_t h;
  size_t s;
} SqdistShape;

typedef struct SqdistInertia {
  size_t n_plus;
  size_t n_zero;
  size_t n_minus;
} SqdistInertia;

/**
 * `value` lies in `[lo, hi]`; `lo == hi` means the value is exact.
 */
typedef struct SqdistRoot {
  double value;
  double lo;
  double hi;
} SqdistRoot;

/**
 * `value = integer_part + 2 * theta.value` when `has_theta`, else
 * `integer_part`.
 */
typedef struct SqdistEnergy {
  int64_t integer_part;
  bool has_theta;
  struct SqdistRoot theta;
  double value;
} SqdistEnergy;

typedef struct SqdistSweep {
  size_t partitions;
  size_t failures;
  double worst_eigenvalue_deviation;
  double worst_energy_deviation;
} SqdistSweep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *sqdist_last_error(void);

/**
 * Library version, static storage.
 */
const char *sqdist_version(void);

/**
 * Builds a partition from `len` part sizes; order does not matter.
 *
 * # Safety
 * `parts` must point to `len` readable values; `out` must be writable.
 */
enum SqdistStatus sqdist_partition_new(const size_t *parts,
                                       size_t len,
                                       struct SqdistPartition **out);

/**
 * Parses a comma-separated list such as `"3,2,2"`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum SqdistStatus sqdist_partition_parse(const char *text, struct SqdistPartition **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `handle` is null or came from this library and was not freed before.
 */
void sqdist_partition_free(struct SqdistPartition *handle);

/**
 * # Safety
 * `handle` is a live handle; `out` must be writable.
 */
enum SqdistStatus sqdist_partition_shape(const struct SqdistPartition *handle,
                                         struct SqdistShape *out);

/**
 * Canonical form such as `"3,2,2"`; free with [`sqdist_string_free`].
 *
 * # Safety
 * `handle` is a live handle; `out` must be writable.
 */
enum SqdistStatus sqdist_partition_to_string(const struct SqdistPartition *handle, char **out);

/**
 * # Safety
 * `handle` is a live handle; `out` must be writable.
 */
enum SqdistStatus sqdist_inertia(const struct SqdistPartition *handle, struct SqdistInertia *out);

/**
 * # Safety
 * `handle` is a live handle; `out` must be writable.
 */
enum SqdistStatus sqdist_energy(const struct SqdistPartition *handle, struct SqdistEnergy *out);

/**
 * # Safety
 * `handle` is a live handle; `out` must be writable.
 */
enum SqdistStatus sqdist_spectral_radius(const struct SqdistPartition *handle,
                                         struct SqdistRoot *out);

/**
 * Sign of `λ_{s+1}` as -1, 0 or 1; needs at least one singleton part and
 * one larger part.
 *
 * # Safety
 * `handle` is a live handle; `out` must be writable.
 */
enum SqdistStatus sqdist_lambda_sign(const struct SqdistPartition *handle, int32_t *out);

/**
 * Exact determinant as a decimal string.
 *
 * # Safety
 * `handle` is a live handle; `out` must be writable.
 */
enum SqdistStatus sqdist_determinant(const struct SqdistPartition *handle, char **out);

/**
 * Spectrum as JSON: `{"exact":[{"value","mult"}],"isolated":[{"value","lo","hi"}]}`.
 *
 * # Safety
 * `handle` is a live handle; `out` must be writable.
 */
enum SqdistStatus sqdist_spectrum_json(const struct SqdistPartition *handle, char **out);

/**
 * Energy scan over all partitions of `n` into `t` parts as JSON. Returns
 * `VerificationFailed` (with `out` still set) when an expected extremum
 * fails to appear.
 *
 * # Safety
 * `out` must be writable.
 */
enum SqdistStatus sqdist_scan_energy_json(size_t n, size_t t, char **out);

/**
 * Oracle sweep over every partition with `n <= n_max`; `tol` bounds the
 * eigenvalue deviation. Fills `out` and returns `VerificationFailed` when
 * any partition disagrees.
 *
 * # Safety
 * `out` must be writable.
 */
enum SqdistStatus sqdist_verify_sweep(size_t n_max, double tol, struct SqdistSweep *out);

/**
 * Frees a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` is null or came from this library and was not freed before.
 */
void sqdist_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SQDIST_H */
