#ifndef INTERNODAL_H
#define INTERNODAL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes shared by all entry points.
typedef enum InternodalStatus {
  INTERNODAL_STATUS_OK = 0,
  INTERNODAL_STATUS_NULL_POINTER = 1,
  INTERNODAL_STATUS_INVALID_CONFIG = 2,
  INTERNODAL_STATUS_INVALID_ARGUMENT = 3,
  INTERNODAL_STATUS_DOMAIN = 4,
  INTERNODAL_STATUS_NO_CONVERGENCE = 5,
  INTERNODAL_STATUS_BUFFER_TOO_SMALL = 6,
  INTERNODAL_STATUS_PANIC = 7,
} InternodalStatus;

// Opaque handle to a validated configuration and its closed-form density.
typedef struct InternodalModel InternodalModel;

typedef struct InternodalBetaFit {
  double alpha;
  double beta;
  double mean;
  double variance;
  double normalization;
} InternodalBetaFit;

typedef struct InternodalSimSummary {
  uint64_t n;
  uint64_t seed;
  double mean;
  double second_moment;
  double ks_statistic;
} InternodalSimSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a model. `dim` is 2 or 3, `scenario` is 1..=4, `r1 <= r2`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum InternodalStatus internodal_model_new(uint8_t dim,
                                           uint8_t scenario,
                                           double r1,
                                           double r2,
                                           struct InternodalModel **out);

// Releases a model. Null is ignored.
//
// # Safety
// `model` must come from [`internodal_model_new`] and not be used afterwards.
void internodal_model_free(struct InternodalModel *model);

// Density at distance `r`.
//
// # Safety
// `model` must be a live handle and `out` writable.
enum InternodalStatus internodal_pdf(const struct InternodalModel *model, double r, double *out);

// Distribution function at distance `r`.
//
// # Safety
// `model` must be a live handle and `out` writable.
enum InternodalStatus internodal_cdf(const struct InternodalModel *model, double r, double *out);

// Raw moment E[r^k], `k <= 8`.
//
// # Safety
// `model` must be a live handle and `out` writable.
enum InternodalStatus internodal_moment(const struct InternodalModel *model,
                                        uint32_t k,
                                        double *out);

// Beta approximation of `r / (r1 + r2)`.
//
// # Safety
// `model` must be a live handle and `out` writable.
enum InternodalStatus internodal_fit_beta(const struct InternodalModel *model,
                                          struct InternodalBetaFit *out);

// Number of grid points [`internodal_pdf_curve`] writes for `n_points`.
//
// # Safety
// `model` must be a live handle and `out` writable.
enum InternodalStatus internodal_curve_len(const struct InternodalModel *model,
                                           uintptr_t n_points,
                                           uintptr_t *out);

// Writes the density curve into caller buffers of length `capacity`.
// The number of points is stored in `written`; when `capacity` is too
// small nothing is copied, `written` holds the required length and
// `BufferTooSmall` is returned.
//
// # Safety
// `grid` and `values` must each point to `capacity` writable doubles,
// `written` must be writable.
enum InternodalStatus internodal_pdf_curve(const struct InternodalModel *model,
                                           uintptr_t n_points,
                                           double *grid,
                                           double *values,
                                           uintptr_t capacity,
                                           uintptr_t *written);

// Simulates `n` pair distances from `seed`; results do not depend on the
// thread count.
//
// # Safety
// `model` must be a live handle and `out` writable.
enum InternodalStatus internodal_simulate(const struct InternodalModel *model,
                                          uint64_t n,
                                          uint64_t seed,
                                          struct InternodalSimSummary *out);

// Copies the calling thread's last error message, NUL-terminated and
// truncated to `len` bytes. Returns the untruncated length without the
// terminator; pass a null buffer to query it.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
uintptr_t internodal_last_error(char *buf, uintptr_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTERNODAL_H */
