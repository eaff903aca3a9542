#ifndef FRAMERECON_H
#define FRAMERECON_H

/* Generated by cbindgen from framerecon-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum FrStatus {
  FR_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  FR_STATUS_NULL_POINTER = 1,
  /**
   * An argument was outside its domain (jitter bound, sizes, names).
   */
  FR_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A string argument was not valid UTF-8.
   */
  FR_STATUS_UTF8 = 3,
  /**
   * An index lay outside the handle's index set.
   */
  FR_STATUS_OUT_OF_RANGE = 4,
  /**
   * The computation failed numerically (singular system, divergence).
   */
  FR_STATUS_NUMERIC = 5,
} FrStatus;

/**
 * Opaque handle to an exponential frame family.
 */
typedef struct FrFrame FrFrame;

/**
 * Opaque handle to a finished reconstruction (coefficients + diagnostics).
 */
typedef struct FrReconstruction FrReconstruction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *fr_status_message(enum FrStatus status);

/**
 * Creates a jittered exponential family with `2*half_width + 1` members.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum FrStatus fr_frame_new_jittered(uintptr_t half_width,
                                    double delta,
                                    uint64_t seed,
                                    struct FrFrame **out);

/**
 * Creates the harmonic (integer-frequency) family.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum FrStatus fr_frame_new_integer(uintptr_t half_width, struct FrFrame **out);

/**
 * Releases a frame handle; a null pointer is a no-op.
 *
 * # Safety
 * `frame` must have been returned by a `fr_frame_new_*` call and not freed.
 */
void fr_frame_free(struct FrFrame *frame);

/**
 * Writes the frequency of member `j` (must satisfy `|j| <= half_width`).
 *
 * # Safety
 * `frame` must be a live handle; `out` must be writable.
 */
enum FrStatus fr_frame_frequency(const struct FrFrame *frame, int64_t j, double *out);

/**
 * Runs one reconstruction of a built-in target function.
 *
 * * `method` — "new", "cc", "finite-section" or "fourier".
 * * `function` — "gaussian", "cospoly" or "bump6".
 * * `n`, `m` — reconstruction and sampling half-widths (`m` is ignored and
 *   forced to `n` by the "fourier" method).
 * * `seed`, `delta` — jittered-frequency draw; `tol` — solver tolerance
 *   (pass 0 for the default 1e-5).
 *
 * # Safety
 * `method` and `function` must be NUL-terminated strings; `out` must point
 * to writable storage for one pointer.
 */
enum FrStatus fr_reconstruct(const char *method,
                             const char *function,
                             uintptr_t n,
                             uintptr_t m,
                             uint64_t seed,
                             double delta,
                             double tol,
                             struct FrReconstruction **out);

/**
 * Releases a reconstruction handle; a null pointer is a no-op.
 *
 * # Safety
 * `rec` must have been returned by [`fr_reconstruct`] and not freed.
 */
void fr_reconstruction_free(struct FrReconstruction *rec);

/**
 * L2 reconstruction error under the normalized inner product (0 for a null
 * handle).
 *
 * # Safety
 * `rec` must be a live reconstruction handle or null.
 */
double fr_reconstruction_l2_error(const struct FrReconstruction *rec);

/**
 * Largest pointwise error on the evaluation grid.
 *
 * # Safety
 * `rec` must be a live reconstruction handle or null.
 */
double fr_reconstruction_max_pointwise_error(const struct FrReconstruction *rec);

/**
 * Two-norm condition number of the solved moment matrix.
 *
 * # Safety
 * `rec` must be a live reconstruction handle or null.
 */
double fr_reconstruction_condition_number(const struct FrReconstruction *rec);

/**
 * Iterations the conjugate-gradient solve took (0 for direct routes).
 *
 * # Safety
 * `rec` must be a live reconstruction handle or null.
 */
uintptr_t fr_reconstruction_iterations(const struct FrReconstruction *rec);

/**
 * 1 when the iterative solve met its tolerance, 0 otherwise.
 *
 * # Safety
 * `rec` must be a live reconstruction handle.
 */
int32_t fr_reconstruction_converged(const struct FrReconstruction *rec);

/**
 * Half-width of the coefficient index set (`2*half_width + 1` coefficients).
 *
 * # Safety
 * `rec` must be a live reconstruction handle.
 */
uintptr_t fr_reconstruction_half_width(const struct FrReconstruction *rec);

/**
 * Writes the complex coefficient at index `j`.
 *
 * # Safety
 * `rec` must be a live handle; `re` and `im` must be writable.
 */
enum FrStatus fr_reconstruction_coefficient(const struct FrReconstruction *rec,
                                            int64_t j,
                                            double *re,
                                            double *im);

/**
 * Evaluates the reconstructed expansion at `x` in `[-1, 1]`.
 *
 * # Safety
 * `rec` must be a live handle; `re` and `im` must be writable.
 */
enum FrStatus fr_reconstruction_evaluate(const struct FrReconstruction *rec,
                                         double x,
                                         double *re,
                                         double *im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRAMERECON_H */
