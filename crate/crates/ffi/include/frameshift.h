#ifndef FRAMESHIFT_H
#define FRAMESHIFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_ARGUMENT = 2,
  FS_STATUS_INVALID_GRID = 3,
  FS_STATUS_GRID_MISMATCH = 4,
  FS_STATUS_NON_INTEGRAL_STEPS = 5,
  FS_STATUS_BUFFER_TOO_SMALL = 6,
  FS_STATUS_INTERNAL = 7,
} FsStatus;

typedef enum FsTransformKind {
  FS_TRANSFORM_KIND_SPATIAL_TRANSLATION = 0,
  FS_TRANSFORM_KIND_MOMENTUM_TRANSLATION = 1,
  FS_TRANSFORM_KIND_GALILEAN_BOOST = 2,
  FS_TRANSFORM_KIND_CONSTANT_ACCELERATION = 3,
} FsTransformKind;

typedef struct FsGrid FsGrid;

typedef struct FsHamiltonian FsHamiltonian;

typedef struct FsTransform FsTransform;

typedef struct FsWaveFunction FsWaveFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length in bytes.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t fs_last_error_message(char *buf, size_t len);

/**
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum FsStatus fs_grid_new(size_t n_points,
                          double length,
                          double x_min,
                          double hbar,
                          struct FsGrid **out);

/**
 * # Safety
 * `grid` must be null or a handle from `fs_grid_new` not yet freed.
 */
void fs_grid_free(struct FsGrid *grid);

/**
 * Returns NaN for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
double fs_grid_dx(const struct FsGrid *grid);

/**
 * Returns NaN for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
double fs_grid_dp(const struct FsGrid *grid);

/**
 * Normalized Gaussian packet at time 0.
 *
 * # Safety
 * `grid` must be a live handle and `out` a valid handle slot.
 */
enum FsStatus fs_gaussian_packet(const struct FsGrid *grid,
                                 double x0,
                                 double p0,
                                 double sigma,
                                 struct FsWaveFunction **out);

/**
 * # Safety
 * `psi` must be null or a live handle.
 */
void fs_wavefunction_free(struct FsWaveFunction *psi);

/**
 * Number of samples; 0 for a null handle.
 *
 * # Safety
 * `psi` must be null or a live handle.
 */
size_t fs_wavefunction_len(const struct FsWaveFunction *psi);

/**
 * Returns NaN for a null handle.
 *
 * # Safety
 * `psi` must be null or a live handle.
 */
double fs_wavefunction_time(const struct FsWaveFunction *psi);

/**
 * Returns NaN for a null handle.
 *
 * # Safety
 * `psi` must be null or a live handle.
 */
double fs_wavefunction_norm(const struct FsWaveFunction *psi);

/**
 * Copies real and imaginary parts into `re` and `im`, each of length `len`.
 *
 * # Safety
 * `re` and `im` must point to `len` writable doubles.
 */
enum FsStatus fs_wavefunction_samples(const struct FsWaveFunction *psi,
                                      double *re,
                                      double *im,
                                      size_t len);

/**
 * `param` is `a`, `b`, the velocity or the acceleration according to `kind`;
 * `mass` is ignored by the translations. `chi` points to four coefficients
 * `c0..c3` or is null for `chi = 0`.
 *
 * # Safety
 * `chi` must be null or point to four doubles; `out` must be a valid handle slot.
 */
enum FsStatus fs_transform_new(enum FsTransformKind kind,
                               double param,
                               double mass,
                               const double *chi,
                               struct FsTransform **out);

/**
 * # Safety
 * `tr` must be null or a live handle.
 */
void fs_transform_free(struct FsTransform *tr);

/**
 * # Safety
 * `tr` must be a live handle and `out` writable.
 */
enum FsStatus fs_transform_alpha(const struct FsTransform *tr, double x, double t, double *out);

/**
 * # Safety
 * `tr` must be a live handle and `out` writable.
 */
enum FsStatus fs_transform_beta(const struct FsTransform *tr, double p, double t, double *out);

/**
 * # Safety
 * `tr` must be a live handle and `out` writable.
 */
enum FsStatus fs_transform_coord_map(const struct FsTransform *tr, double x, double t, double *out);

/**
 * # Safety
 * `tr` must be a live handle and `out` writable.
 */
enum FsStatus fs_transform_momentum_map(const struct FsTransform *tr,
                                        double p,
                                        double t,
                                        double *out);

/**
 * `p x - [beta - alpha + P X]`.
 *
 * # Safety
 * `tr` must be a live handle and `out` writable.
 */
enum FsStatus fs_transform_bas_residual(const struct FsTransform *tr,
                                        double x,
                                        double p,
                                        double t,
                                        double *out);

/**
 * `psi'(x) = e^{-i alpha(x, t)/hbar} psi(X(x, t))` at the state's own time.
 *
 * # Safety
 * `tr` and `psi` must be live handles; `out` a valid handle slot.
 */
enum FsStatus fs_apply_position(const struct FsTransform *tr,
                                const struct FsWaveFunction *psi,
                                struct FsWaveFunction **out);

/**
 * `H = (p - A)^2 / 2m - F x + e(t)` with `scalar` pointing to the four
 * coefficients of `e` or null for `e = 0`.
 *
 * # Safety
 * `scalar` must be null or point to four doubles; `out` a valid handle slot.
 */
enum FsStatus fs_hamiltonian_new(double mass,
                                 double momentum_offset,
                                 double force,
                                 const double *scalar,
                                 struct FsHamiltonian **out);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
void fs_hamiltonian_free(struct FsHamiltonian *h);

/**
 * Reads back `m`, `A`, `F` and the four coefficients of `e(t)`.
 *
 * # Safety
 * All output pointers must be writable; `scalar` must hold four doubles.
 */
enum FsStatus fs_hamiltonian_coefficients(const struct FsHamiltonian *h,
                                          double *mass,
                                          double *momentum_offset,
                                          double *force,
                                          double *scalar);

/**
 * `K = U H U^-1 + i hbar (dU/dt) U^-1`.
 *
 * # Safety
 * `tr` and `h` must be live handles; `out` a valid handle slot.
 */
enum FsStatus fs_transformed_hamiltonian(const struct FsTransform *tr,
                                         const struct FsHamiltonian *h,
                                         struct FsHamiltonian **out);

/**
 * Split-step evolution from the state's time to `t_end`.
 *
 * # Safety
 * `psi` and `h` must be live handles; `out` a valid handle slot.
 */
enum FsStatus fs_propagate(const struct FsWaveFunction *psi,
                           const struct FsHamiltonian *h,
                           double t_end,
                           double dt,
                           struct FsWaveFunction **out);

/**
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum FsStatus fs_l2_distance(const struct FsWaveFunction *a,
                             const struct FsWaveFunction *b,
                             double *out);

/**
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum FsStatus fs_distance_up_to_phase(const struct FsWaveFunction *a,
                                      const struct FsWaveFunction *b,
                                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRAMESHIFT_H */
