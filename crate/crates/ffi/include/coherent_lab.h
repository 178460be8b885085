#ifndef COHERENT_LAB_H
#define COHERENT_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ClStatus {
  CL_STATUS_OK = 0,
  CL_STATUS_NULL_POINTER = 1,
  CL_STATUS_INVALID_ARGUMENT = 2,
  CL_STATUS_TRUNCATION_GUARD = 3,
  CL_STATUS_POLE_GUARD = 4,
  CL_STATUS_NUMERICAL = 5,
  CL_STATUS_OUT_OF_BOUNDS = 6,
  CL_STATUS_PANIC = 7,
} ClStatus;

/**
 * Expansion coefficients of a coherent state in the truncated Fock basis.
 */
typedef struct ClState ClState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library from the same thread.
 */
const char *cl_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *cl_version(void);

/**
 * Heisenberg-Weyl number coherent state `D(alpha)|n>` on `dim` levels.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum ClStatus cl_weyl_state(size_t n,
                            double alpha_re,
                            double alpha_im,
                            size_t dim,
                            struct ClState **out);

/**
 * SU(1,1) number coherent state `D(xi)|k, n>` with `xi = -(tau/2) e^{-i phi}`.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum ClStatus cl_perelomov_state(size_t n,
                                 double k,
                                 double tau,
                                 double phi,
                                 size_t dim,
                                 struct ClState **out);

/**
 * Number of coefficients held by `state`, or 0 for null.
 *
 * # Safety
 * `state` must be null or a live handle.
 */
size_t cl_state_len(const struct ClState *state);

/**
 * Squared norm of the expansion beyond the truncation, or NaN for null.
 *
 * # Safety
 * `state` must be null or a live handle.
 */
double cl_state_tail_mass(const struct ClState *state);

/**
 * Coefficient `index` of `state`.
 *
 * # Safety
 * `state` must be a live handle; `re` and `im` must be writable.
 */
enum ClStatus cl_state_coefficient(const struct ClState *state,
                                   size_t index,
                                   double *re,
                                   double *im);

/**
 * Copies all coefficients into `re` and `im`, which must each hold `len`
 * doubles with `len` equal to [`cl_state_len`].
 *
 * # Safety
 * `state` must be a live handle; `re` and `im` must be writable for `len`
 * doubles.
 */
enum ClStatus cl_state_copy(const struct ClState *state, double *re, double *im, size_t len);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `state` must be null or a handle not yet freed.
 */
void cl_state_free(struct ClState *state);

/**
 * Landau level `(n + 1/2) omega + kz^2 / 2` in natural units.
 *
 * # Safety
 * `out` must be writable.
 */
enum ClStatus cl_landau_energy(size_t n, double omega, double kz, double *out);

/**
 * Normalized Sturmian radial function `U_{n,m}(y)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ClStatus cl_sturmian_radial(size_t n, size_t m, double y, double *out);

/**
 * Symmetric-gauge number coherent state at polar point `(rho, angle)`.
 *
 * # Safety
 * `re` and `im` must be writable.
 */
enum ClStatus cl_symmetric_state(size_t n,
                                 uint32_t m,
                                 double tau,
                                 double phi,
                                 double rho,
                                 double angle,
                                 double *re,
                                 double *im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COHERENT_LAB_H */
