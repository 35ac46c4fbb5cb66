#ifndef SPECINEQ_H
#define SPECINEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SPECINEQ_DIRICHLET 0

#define SPECINEQ_NEUMANN 1

#define SPECINEQ_CLAMPED 2

#define SPECINEQ_BUCKLING 3

// Result codes.
typedef enum SpecineqStatus {
  SPECINEQ_STATUS_OK = 0,
  SPECINEQ_STATUS_INVALID_ARGUMENT = 1,
  SPECINEQ_STATUS_NULL_POINTER = 2,
  SPECINEQ_STATUS_OUT_OF_RANGE = 3,
  SPECINEQ_STATUS_NO_CONVERGENCE = 4,
  SPECINEQ_STATUS_BAD_DOMAIN = 5,
  SPECINEQ_STATUS_SOLVER_FAILED = 6,
  SPECINEQ_STATUS_MISMATCH = 7,
  SPECINEQ_STATUS_SPECTRUM_TOO_SHORT = 8,
  SPECINEQ_STATUS_MISSING_SPECTRUM = 9,
  SPECINEQ_STATUS_HYPOTHESIS = 10,
  SPECINEQ_STATUS_INCONSISTENT = 11,
  SPECINEQ_STATUS_UNKNOWN_INEQUALITY = 12,
  SPECINEQ_STATUS_IO = 13,
  SPECINEQ_STATUS_PANIC = 14,
} SpecineqStatus;

// Status of an evaluated inequality.
typedef enum SpecineqCheckStatus {
  SPECINEQ_CHECK_STATUS_PROVEN = 0,
  SPECINEQ_CHECK_STATUS_CONJECTURE = 1,
  SPECINEQ_CHECK_STATUS_INFORMATIONAL = 2,
} SpecineqCheckStatus;

// Opaque collection of spectra of one domain.
typedef struct SpecineqBundle SpecineqBundle;

// Opaque eigenvalue list.
typedef struct SpecineqSpectrum SpecineqSpectrum;

// Flat copy of one inequality report, oriented as `lhs ≤ rhs`.
typedef struct SpecineqCheck {
  double lhs;
  double rhs;
  double slack;
  double tolerance;
  // 1 when `slack ≥ −tolerance`.
  uint8_t holds;
  enum SpecineqCheckStatus status;
} SpecineqCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *specineq_last_error(void);

// Library version as a static NUL-terminated string.
const char *specineq_version(void);

// Closed-form spectrum of the `n`-ball of the given radius, `count` values
// with multiplicity.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum SpecineqStatus specineq_spectrum_ball(uint32_t kind,
                                           size_t n,
                                           double radius,
                                           size_t count,
                                           struct SpecineqSpectrum **out_handle);

// Extrapolated grid spectrum of a planar shape given as a descriptor such
// as `"disk:1"` or `"rectangle:2,1"`, from `levels ≥ 2` meshes starting at `h`.
//
// # Safety
// `shape` must be a NUL-terminated string; `out_handle` must be writable.
enum SpecineqStatus specineq_spectrum_grid(const char *shape,
                                           uint32_t kind,
                                           double h,
                                           size_t levels,
                                           size_t count,
                                           struct SpecineqSpectrum **out_handle);

// Wraps caller-supplied eigenvalues (nondecreasing, with multiplicity).
//
// # Safety
// `values` must point to `len` readable doubles; `out_handle` must be writable.
enum SpecineqStatus specineq_spectrum_from_values(uint32_t kind,
                                                  size_t n,
                                                  const double *values,
                                                  size_t len,
                                                  struct SpecineqSpectrum **out_handle);

// Number of stored eigenvalues, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t specineq_spectrum_len(const struct SpecineqSpectrum *s);

// Copies up to `cap` eigenvalues into `buf` and the matching allowances into
// `allowance` (which may be null); `written` receives the number copied.
//
// # Safety
// `buf` (and `allowance` if non-null) must hold `cap` doubles.
enum SpecineqStatus specineq_spectrum_values(const struct SpecineqSpectrum *s,
                                             double *buf,
                                             double *allowance,
                                             size_t cap,
                                             size_t *written);

// # Safety
// `s` must be null or a handle not yet freed.
void specineq_spectrum_free(struct SpecineqSpectrum *s);

// Evaluates a single-spectrum inequality (membrane, plate, or buckling
// family). `m` is the index for indexed ids and is ignored otherwise.
//
// # Safety
// `id` must be a NUL-terminated string; `s` a live handle; `result` writable.
enum SpecineqStatus specineq_check(const char *id,
                                   const struct SpecineqSpectrum *s,
                                   size_t m,
                                   struct SpecineqCheck *result);

// New empty bundle for a domain of dimension `n` and measure `area`
// (pass a non-positive area when unknown).
//
// # Safety
// `label` must be a NUL-terminated string; `out_handle` writable.
enum SpecineqStatus specineq_bundle_new(const char *label,
                                        size_t n,
                                        double area,
                                        struct SpecineqBundle **out_handle);

// Copies `s` into the bundle, replacing any spectrum of the same kind.
//
// # Safety
// Both handles must be live.
enum SpecineqStatus specineq_bundle_add(struct SpecineqBundle *b, const struct SpecineqSpectrum *s);

// Evaluates an isoperimetric inequality on the bundle.
//
// # Safety
// `id` must be a NUL-terminated string; `b` live; `result` writable.
enum SpecineqStatus specineq_bundle_check(const struct SpecineqBundle *b,
                                          const char *id,
                                          struct SpecineqCheck *result);

// Number of proven-status reports that fail when the whole catalog is run
// on the bundle for `m ≤ m_max` and Pólya levels `k ≤ k_max`.
//
// # Safety
// `b` live; `failed` and `total` writable.
enum SpecineqStatus specineq_bundle_check_all(const struct SpecineqBundle *b,
                                              size_t m_max,
                                              size_t k_max,
                                              size_t *failed,
                                              size_t *total);

// # Safety
// `b` must be null or a handle not yet freed.
void specineq_bundle_free(struct SpecineqBundle *b);

// `c_n = 2^{2/n} (j_{n/2−1,1}/j_{n/2,1})²`.
//
// # Safety
// `value` must be writable.
enum SpecineqStatus specineq_c_constant(size_t n, double *value);

// `d_n` and the volume fraction `t` at which the two-ball minimum occurs.
//
// # Safety
// `d` and `t` must be writable.
enum SpecineqStatus specineq_d_constant(size_t n, double *d, double *t);

// `k`-th positive zero of `J_ν`, `k ≥ 1`.
//
// # Safety
// `value` must be writable.
enum SpecineqStatus specineq_bessel_zero(double nu, size_t k, double *value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECINEQ_H */
