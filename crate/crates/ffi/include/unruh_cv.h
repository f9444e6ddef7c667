#ifndef UNRUH_CV_H
#define UNRUH_CV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>

/**
 * Result code of every fallible call.
 */
typedef enum UcvStatus {
  UCV_STATUS_OK = 0,
  UCV_STATUS_NULL_POINTER = 1,
  /**
   * Bad shape, mode index or partition.
   */
  UCV_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A scalar parameter is outside its domain.
   */
  UCV_STATUS_DOMAIN = 3,
  /**
   * The input is not a physical covariance matrix or state.
   */
  UCV_STATUS_NOT_PHYSICAL = 4,
  /**
   * A numerical routine lost accuracy.
   */
  UCV_STATUS_NUMERICAL = 5,
  UCV_STATUS_UNSUPPORTED = 6,
  /**
   * The output buffer is too short; the required length was written.
   */
  UCV_STATUS_BUFFER_TOO_SMALL = 7,
  UCV_STATUS_PANIC = 8,
} UcvStatus;

/**
 * Opaque covariance matrix.
 */
typedef struct UcvCovMatrix UcvCovMatrix;

/**
 * Result of a two-mode entanglement evaluation.
 */
typedef struct UcvMeasure {
  double m_parameter;
  double contangle;
  bool separable;
} UcvMeasure;

/**
 * Closed-form summary for one inertial and one accelerated observer.
 * `tau_max` is `INFINITY` at `r = 0`.
 */
typedef struct UcvSingleReport {
  double s;
  double r;
  double m_a_rrbar;
  double m_r_arbar;
  double m_rbar_ar;
  double m_ar;
  double m_rrbar;
  double tau_ar;
  double tau_rrbar;
  double tau_max;
  double r_star;
  double residual_tripartite;
  double mutual_info_ar;
  double entropy_of_entanglement;
} UcvSingleReport;

/**
 * Closed-form summary for two accelerated observers. Fields defined only
 * at equal accelerations are `NAN` otherwise; `r_eff` is `NAN` at `s = 0`
 * and `INFINITY` when no finite effective acceleration exists.
 */
typedef struct UcvDoubleReport {
  double s;
  double l;
  double n;
  double m_l_n;
  double m_l_lbar;
  double m_n_nbar;
  double m_l_nbar;
  double m_n_lbar;
  double m_lbar_nbar;
  double m_lbar_rest;
  double m_l_rest;
  double m_n_rest;
  double m_nbar_rest;
  double tau_l_n;
  double r_eff;
  double a_star;
  double residual_multipartite;
  double tripartite_upper_bound;
  double mutual_info_l_n;
  double deficit;
} UcvDoubleReport;

/**
 * Description of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *ucv_last_error_message(void);

/**
 * Builds a matrix from `4 * n_modes^2` row-major entries.
 */
enum UcvStatus ucv_cm_new(size_t n_modes,
                          const double *data,
                          size_t len,
                          struct UcvCovMatrix **out);

enum UcvStatus ucv_cm_vacuum(size_t n_modes, struct UcvCovMatrix **out);

/**
 * Three-mode state (Alice, Rob, anti-Rob) built numerically.
 */
enum UcvStatus ucv_cm_single_observer(double s, double r, struct UcvCovMatrix **out);

/**
 * Four-mode state (anti-Leo, Leo, Nadia, anti-Nadia) built numerically.
 */
enum UcvStatus ucv_cm_double_observer(double s, double l, double n, struct UcvCovMatrix **out);

/**
 * Releases a handle. Null is ignored.
 */
void ucv_cm_free(struct UcvCovMatrix *cm);

/**
 * Number of modes, or 0 for a null handle.
 */
size_t ucv_cm_n_modes(const struct UcvCovMatrix *cm);

/**
 * Copies the row-major entries into `buf`. `required`, if not null,
 * receives the needed length.
 */
enum UcvStatus ucv_cm_entries(const struct UcvCovMatrix *cm,
                              double *buf,
                              size_t len,
                              size_t *required);

enum UcvStatus ucv_cm_reduce(const struct UcvCovMatrix *cm,
                             const size_t *keep,
                             size_t n_keep,
                             struct UcvCovMatrix **out);

enum UcvStatus ucv_cm_partial_transpose(const struct UcvCovMatrix *cm,
                                        const size_t *transposed,
                                        size_t n_transposed,
                                        struct UcvCovMatrix **out);

/**
 * Ascending symplectic eigenvalues, one per mode.
 */
enum UcvStatus ucv_cm_symplectic_eigenvalues(const struct UcvCovMatrix *cm,
                                             double *buf,
                                             size_t len,
                                             size_t *required);

enum UcvStatus ucv_cm_von_neumann_entropy(const struct UcvCovMatrix *cm, double *out);

/**
 * Mutual information between the two modes of a two-mode matrix.
 */
enum UcvStatus ucv_cm_mutual_information(const struct UcvCovMatrix *cm, double *out);

/**
 * Logarithmic negativity for the bipartition `transposed | rest`.
 */
enum UcvStatus ucv_cm_log_negativity(const struct UcvCovMatrix *cm,
                                     const size_t *transposed,
                                     size_t n_transposed,
                                     double *out);

/**
 * Contangle of a two-mode state.
 */
enum UcvStatus ucv_cm_two_mode_contangle(const struct UcvCovMatrix *cm, struct UcvMeasure *out);

/**
 * m-value of `probe` against all other modes of a pure state.
 */
enum UcvStatus ucv_cm_pure_one_vs_rest_m(const struct UcvCovMatrix *cm, size_t probe, double *out);

enum UcvStatus ucv_contangle_from_m(double m, double *out);

enum UcvStatus ucv_accel_to_squeezing(double acceleration, double frequency, double *out);

enum UcvStatus ucv_single_report(double s, double r, struct UcvSingleReport *out);

enum UcvStatus ucv_double_report(double s, double l, double n, struct UcvDoubleReport *out);

#endif  /* UNRUH_CV_H */
