#ifndef ISELAB_H
#define ISELAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum IselabStatus {
  ISELAB_STATUS_OK = 0,
  // A required pointer argument was NULL.
  ISELAB_STATUS_NULL_POINTER = 1,
  // An argument is outside the supported domain.
  ISELAB_STATUS_INVALID_ARGUMENT = 2,
  // A caller-supplied buffer is too short; the needed length was reported.
  ISELAB_STATUS_BUFFER_TOO_SMALL = 3,
  // A numerical routine failed (non-convergence, pole, branch loss).
  ISELAB_STATUS_NUMERIC = 4,
  // An internal panic was caught at the boundary.
  ISELAB_STATUS_PANIC = 5,
} IselabStatus;

typedef enum IselabFamily {
  ISELAB_FAMILY_BINARY = 0,
  ISELAB_FAMILY_COMPLETE_BINARY = 1,
  ISELAB_FAMILY_PLANE_PM1 = 2,
  ISELAB_FAMILY_PLANE0PM1 = 3,
} IselabFamily;

typedef enum IselabKind {
  // Vertical profile; limit ISE.
  ISELAB_KIND_ISE = 0,
  // Horizontal profile; limit Brownian excursion.
  ISELAB_KIND_EXC = 1,
} IselabKind;

// Exact profile-correlation polynomials of one family.
typedef struct IselabCorrelation IselabCorrelation;

// One random labelled tree.
typedef struct IselabTree IselabTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *iselab_version(void);

// Message of the last failure on this thread ("" if none). Valid until the
// next failing call on the same thread.
const char *iselab_last_error_message(void);

// Exact `E Π_i Σ_v ℓ(v)^{parts_i}` over objects of size `n`, written as
// "p/q" into `buf`, and the normalised moment `E m_{λ,n}` into
// `normalized` (may be NULL).
//
// # Safety
// `parts` must point to `parts_len` integers; `buf` to `buf_len` bytes.
enum IselabStatus iselab_exact_moment(enum IselabFamily family,
                                      const uint32_t *parts,
                                      size_t parts_len,
                                      size_t n,
                                      char *buf,
                                      size_t buf_len,
                                      size_t *needed,
                                      double *normalized);

// Normalised moment `E m_{λ,n}` from the double-precision series.
//
// # Safety
// `parts` must point to `parts_len` integers.
enum IselabStatus iselab_float_moment(enum IselabFamily family,
                                      const uint32_t *parts,
                                      size_t parts_len,
                                      size_t n,
                                      double *result);

// Grand-moment number `c_λ` or `d_λ` as "p/q".
//
// # Safety
// `parts` must point to `parts_len` integers; `buf` to `buf_len` bytes.
enum IselabStatus iselab_grand_number(enum IselabKind kind,
                                      const uint32_t *parts,
                                      size_t parts_len,
                                      char *buf,
                                      size_t buf_len,
                                      size_t *needed);

// Limit moment `E m_λ` of ISE or of the Brownian excursion.
//
// # Safety
// `parts` must point to `parts_len` integers.
enum IselabStatus iselab_limit_moment(enum IselabKind kind,
                                      const uint32_t *parts,
                                      size_t parts_len,
                                      double *result);

// Mean ISE density by quadrature.
//
// # Safety
// `result` must be a valid pointer.
enum IselabStatus iselab_mean_density(double x, double *result);

// Mean ISE density by its power series (`|x| ≤ 4.5`).
//
// # Safety
// `result` must be a valid pointer.
enum IselabStatus iselab_mean_density_series(double x, double *result);

// `E exp(a f_ISE(x))`.
//
// # Safety
// `result` must be a valid pointer.
enum IselabStatus iselab_density_mgf(double x, double a, double *result);

// `E f_ISE(0)^r` for `r > -4/3`.
//
// # Safety
// `result` must be a valid pointer.
enum IselabStatus iselab_density0_moment(double r, double *result);

// `E ∫ |x|^a dμ_ISE` for `a > -1`.
//
// # Safety
// `result` must be a valid pointer.
enum IselabStatus iselab_abs_moment_ise(double a, double *result);

// Builds the exact correlation polynomials up to size `order`.
//
// # Safety
// `handle` must be a valid pointer; release the result with
// [`iselab_correlation_free`].
enum IselabStatus iselab_correlation_new(enum IselabFamily family,
                                         size_t order,
                                         struct IselabCorrelation **handle);

// Releases a correlation handle; NULL is ignored.
//
// # Safety
// `handle` must come from [`iselab_correlation_new`] and not be used again.
void iselab_correlation_free(struct IselabCorrelation *handle);

// `E |X̂_n(u)|²`.
//
// # Safety
// `handle` and `result` must be valid pointers.
enum IselabStatus iselab_correlation_fourier_second_moment(const struct IselabCorrelation *handle,
                                                           size_t n,
                                                           double u,
                                                           double *result);

// `(1 + N u⁴) E |X̂_n(u) / N|²`.
//
// # Safety
// `handle` and `result` must be valid pointers.
enum IselabStatus iselab_correlation_l3_ratio(const struct IselabCorrelation *handle,
                                              size_t n,
                                              double u,
                                              double *result);

// Draws a uniform tree of size `n` from stream `stream_id` of
// `master_seed`.
//
// # Safety
// `handle` must be a valid pointer; release the result with
// [`iselab_tree_free`].
enum IselabStatus iselab_tree_sample(enum IselabFamily family,
                                     size_t n,
                                     uint64_t master_seed,
                                     uint64_t stream_id,
                                     struct IselabTree **handle);

// Releases a tree handle; NULL is ignored.
//
// # Safety
// `handle` must come from [`iselab_tree_sample`] and not be used again.
void iselab_tree_free(struct IselabTree *handle);

// Number of nodes (0 for a NULL handle).
//
// # Safety
// `handle` must be NULL or a valid tree handle.
size_t iselab_tree_node_count(const struct IselabTree *handle);

// Copies the labels in preorder into `labels` (`len` entries available).
//
// # Safety
// `handle` must be valid; `labels` must point to `len` writable entries.
enum IselabStatus iselab_tree_labels(const struct IselabTree *handle, int64_t *labels, size_t len);

// Vertical profile: `offset` receives the smallest label and `counts` the
// occupation numbers from there on; `needed` receives their number.
//
// # Safety
// `handle` and `offset` must be valid; `counts` must point to `len`
// writable entries.
enum IselabStatus iselab_tree_profile(const struct IselabTree *handle,
                                      int64_t *offset,
                                      uint64_t *counts,
                                      size_t len,
                                      size_t *needed);

// Normalised moment `m_λ` of one tree.
//
// # Safety
// `handle` and `result` must be valid; `parts` must point to `parts_len`
// integers.
enum IselabStatus iselab_tree_label_moment(const struct IselabTree *handle,
                                           const uint32_t *parts,
                                           size_t parts_len,
                                           double *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISELAB_H */
