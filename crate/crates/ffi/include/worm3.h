#ifndef WORM3_H
#define WORM3_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Worm3Status {
  WORM3_STATUS_OK = 0,
  WORM3_STATUS_NULL_POINTER = 1,
  WORM3_STATUS_INVALID_POINT = 2,
  WORM3_STATUS_OUT_OF_RANGE = 3,
  WORM3_STATUS_BRANCH_VIOLATION = 4,
  WORM3_STATUS_NON_CONVERGENT = 5,
  WORM3_STATUS_GRID_TOO_COARSE = 6,
  WORM3_STATUS_TOO_CLOSE_TO_CONTOUR = 7,
  WORM3_STATUS_ON_WALL = 8,
  WORM3_STATUS_DEGENERATE_FRAME = 9,
  WORM3_STATUS_NOT_ON_BOUNDARY = 10,
  WORM3_STATUS_OTHER = 11,
  WORM3_STATUS_PANIC = 12,
} Worm3Status;

/**
 * Opaque profile handle.
 */
typedef struct Worm3Profile Worm3Profile;

/**
 * (A, B, c) of one summand of the two-sided profile.
 */
typedef struct Worm3Side {
  double a;
  double b;
  double c;
} Worm3Side;

typedef struct Worm3Complex {
  double re;
  double im;
} Worm3Complex;

typedef struct Worm3Point {
  struct Worm3Complex z1;
  struct Worm3Complex z2;
  struct Worm3Complex z3;
} Worm3Point;

/**
 * Eigenvalues (ascending) and Frobenius norm of the restricted Levi form.
 */
typedef struct Worm3Levi {
  double lambda_min;
  double lambda_max;
  double norm;
} Worm3Levi;

/**
 * f(z1, z2, z3, user_data). May be called concurrently from several threads.
 */
typedef struct Worm3Complex (*Worm3HolomorphicFn)(struct Worm3Complex z1,
                                                  struct Worm3Complex z2,
                                                  struct Worm3Complex z3,
                                                  void *user_data);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread ("" after a success).
 * Valid until the next worm3 call on the same thread.
 */
const char *worm3_last_error(void);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum Worm3Status worm3_profile_zero(struct Worm3Profile **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum Worm3Status worm3_profile_char_square(double mu, struct Worm3Profile **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum Worm3Status worm3_profile_convex_sum(double mu, double mu_prime, struct Worm3Profile **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum Worm3Status worm3_profile_separable(double mu, double mu_prime, struct Worm3Profile **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum Worm3Status worm3_profile_two_sided(double mu,
                                         struct Worm3Side plus,
                                         struct Worm3Side minus,
                                         struct Worm3Profile **out);

/**
 * # Safety
 * `profile` must come from a worm3_profile_* constructor and not be freed twice.
 */
void worm3_profile_free(struct Worm3Profile *profile);

/**
 * ρ(p) for the given profile.
 *
 * # Safety
 * `profile` must be a live handle and `out` valid for writes.
 */
enum Worm3Status worm3_eval_rho(const struct Worm3Profile *profile,
                                struct Worm3Point p,
                                double *out);

/**
 * # Safety
 * `profile` must be a live handle and `out` valid for writes.
 */
enum Worm3Status worm3_restricted_levi(const struct Worm3Profile *profile,
                                       struct Worm3Point p,
                                       struct Worm3Levi *out);

/**
 * Selects c± for the symmetric shape B±² = b_factor·2e^μ, A± = a_factor·B±.
 * `grid` of 0 uses the default resolution.
 *
 * # Safety
 * `plus` and `minus` must be valid for writes.
 */
enum Worm3Status worm3_select_constants(double mu,
                                        double b_factor,
                                        double a_factor,
                                        uint32_t grid,
                                        struct Worm3Side *plus,
                                        struct Worm3Side *minus);

/**
 * K(ζ, ζ′) by quadrature; `error_estimate` may be null.
 *
 * # Safety
 * `out` must be valid for writes; `error_estimate` null or valid.
 */
enum Worm3Status worm3_kernel_quadrature(double mu,
                                         struct Worm3Complex zeta,
                                         struct Worm3Complex zeta_prime,
                                         struct Worm3Complex *out,
                                         double *error_estimate);

/**
 * The two-term asymptotic form of K(ζ, ζ′).
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum Worm3Status worm3_kernel_asymptotic(double mu,
                                         struct Worm3Complex zeta,
                                         struct Worm3Complex zeta_prime,
                                         struct Worm3Complex *out);

/**
 * ‖E_{a+ib}z₂ʲz₃ᵏ‖². On divergence `*divergent` is set to 1 and `*value` to +inf.
 *
 * # Safety
 * `value` and `divergent` must be valid for writes.
 */
enum Worm3Status worm3_norm_integral(double a,
                                     double b,
                                     int32_t j,
                                     int32_t k,
                                     double mu,
                                     double *value,
                                     int32_t *divergent);

/**
 * F_a(p) over 𝒜_a × 𝒜_a with `nodes` points per circle (0 for the default).
 *
 * # Safety
 * `f` must be safe to call concurrently with `user_data`; `out` valid for writes.
 */
enum Worm3Status worm3_cauchy_extend(Worm3HolomorphicFn f,
                                     void *user_data,
                                     double a,
                                     struct Worm3Point p,
                                     uint32_t nodes,
                                     struct Worm3Complex *out);

/**
 * Library version as a static NUL-terminated string.
 */
const char *worm3_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WORM3_H */
