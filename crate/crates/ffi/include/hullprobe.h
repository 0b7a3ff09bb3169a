#ifndef HULLPROBE_H
#define HULLPROBE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HpBodyKind {
  HP_BODY_KIND_CUBE = 0,
  HP_BODY_KIND_SIMPLEX = 1,
  HP_BODY_KIND_CROSS_POLYTOPE = 2,
  HP_BODY_KIND_BALL = 3,
} HpBodyKind;

typedef enum HpStatus {
  HP_STATUS_OK = 0,
  HP_STATUS_INVALID_ARGUMENT = 1,
  HP_STATUS_DEGENERATE = 2,
  HP_STATUS_RANGE = 3,
  HP_STATUS_UNSUPPORTED_BODY = 4,
  HP_STATUS_NUMERICAL = 5,
  HP_STATUS_NO_SOLUTION = 6,
  HP_STATUS_IO = 7,
  HP_STATUS_PARSE = 8,
  HP_STATUS_NULL_POINTER = 9,
  HP_STATUS_PANIC = 10,
} HpStatus;

/**
 * Opaque convex body.
 */
typedef struct HpBody HpBody;

typedef struct HpEstimate {
  uint64_t trials;
  uint64_t successes;
  double p_hat;
  double wilson_low;
  double wilson_high;
} HpEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null.
 */
const char *hp_last_error_message(void);

/**
 * Static name of a status code.
 */
const char *hp_status_name(enum HpStatus status);

/**
 * Catalog body of dimension `dim`; `scale` is the side (cube), radius
 * (ball, cross-polytope) or vertex scale (simplex).
 *
 * # Safety
 * `out` must point to writable storage for one handle.
 */
enum HpStatus hp_body_new(enum HpBodyKind kind, size_t dim, double scale, struct HpBody **out);

/**
 * Convex polygon from `n` counter-clockwise vertices `xy[2i], xy[2i+1]`,
 * translated so its centroid is the origin.
 *
 * # Safety
 * `xy` must hold `2n` doubles; `out` must be writable.
 */
enum HpStatus hp_body_polygon(const double *xy, size_t n, struct HpBody **out);

/**
 * Body from a JSON specification such as `{"kind":"cube","dim":3,"scale":2}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HpStatus hp_body_from_json(const char *json, struct HpBody **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `body` must come from one of the constructors and not be freed twice.
 */
void hp_body_free(struct HpBody *body);

/**
 * # Safety
 * `body` must be a live handle; `out` must be writable.
 */
enum HpStatus hp_body_dim(const struct HpBody *body, size_t *out);

/**
 * # Safety
 * `body` must be a live handle; `out` must be writable.
 */
enum HpStatus hp_body_volume(const struct HpBody *body, double *out);

/**
 * Support function `h(u)` for a unit vector `u` of length `dim`.
 *
 * # Safety
 * `u` must hold `dim` doubles; `out` must be writable.
 */
enum HpStatus hp_body_support(const struct HpBody *body, const double *u, size_t dim, double *out);

/**
 * # Safety
 * `body` must be a live handle; `p` must hold `dim` doubles; `out` must be writable.
 */
enum HpStatus hp_body_contains(const struct HpBody *body,
                               const double *p,
                               size_t dim,
                               double tol,
                               bool *out);

/**
 * `ε = (1-θ)^d / e`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HpStatus hp_epsilon(size_t d, double theta, double *out);

/**
 * Sample size `t` for constant `c`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HpStatus hp_net_size(size_t d, double theta, double c, uint64_t *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HpStatus hp_theorem_constant_check(size_t d, double theta, double delta, double c, bool *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HpStatus hp_lemma_constant_check(double c,
                                      double epsilon,
                                      uint32_t vc_dim,
                                      double delta,
                                      bool *out);

/**
 * Smallest admissible constant for `(d, θ, δ)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HpStatus hp_min_valid_c(size_t d, double theta, double delta, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HpStatus hp_failure_probability_bound(uint64_t t,
                                           double epsilon,
                                           uint32_t vc_dim,
                                           double *out);

/**
 * One containment trial on stream `(seed, index)`. On failure the witness
 * cap `{<normal, x> >= offset}` is written when both buffers are non-null;
 * `normal` must then hold `dim` doubles.
 *
 * # Safety
 * Pointers must be valid as described above.
 */
enum HpStatus hp_run_trial(const struct HpBody *body,
                           double theta,
                           size_t t,
                           uint64_t seed,
                           uint64_t index,
                           bool *success,
                           double *witness_normal,
                           double *witness_offset);

/**
 * Success rate over `n_trials` independent trials with a 99% Wilson interval.
 *
 * # Safety
 * `body` must be a live handle; `out` must be writable.
 */
enum HpStatus hp_estimate_success(const struct HpBody *body,
                                  double theta,
                                  size_t t,
                                  uint64_t n_trials,
                                  uint64_t seed,
                                  struct HpEstimate *out);

/**
 * Decides whether `q` lies in the hull of `n` points of dimension `d`.
 * When inside and `weights` is non-null, `n` convex weights are written.
 * When outside and both separator buffers are non-null, a halfspace
 * `{<normal, x> >= offset}` holding `q` strictly and no input point is written.
 *
 * # Safety
 * `points` must hold `n*d` doubles, `q` `d` doubles, `weights` `n`, `normal` `d`.
 */
enum HpStatus hp_point_in_hull(const double *points,
                               size_t n,
                               size_t d,
                               const double *q,
                               double tol,
                               bool *inside,
                               double *weights,
                               double *normal,
                               double *offset);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HULLPROBE_H */
