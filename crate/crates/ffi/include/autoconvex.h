#ifndef AUTOCONVEX_H
#define AUTOCONVEX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AcStatus {
  AC_STATUS_OK = 0,
  AC_STATUS_NULL_POINTER = 1,
  AC_STATUS_INVALID_ARGUMENT = 2,
  AC_STATUS_INVALID_INPUT = 3,
  AC_STATUS_SHAPE_MISMATCH = 4,
  AC_STATUS_NOT_HERMITIAN = 5,
  AC_STATUS_NO_CONVERGENCE = 6,
  AC_STATUS_GEOMETRY = 7,
  AC_STATUS_NOT_MAJORIZED = 8,
  AC_STATUS_NOT_IN_SET = 9,
  AC_STATUS_TOO_LARGE = 10,
  AC_STATUS_INFEASIBLE = 11,
  AC_STATUS_BUFFER_TOO_SMALL = 12,
  AC_STATUS_PANIC = 99,
} AcStatus;

typedef struct AcCurve AcCurve;

typedef struct AcMatrix AcMatrix;

typedef struct AcMeasure AcMeasure;

typedef struct AcPolytope AcPolytope;

typedef struct AcSubspace AcSubspace;

typedef struct AcSupportPoint {
  double theta;
  double h;
  double x;
  double y;
  bool flat;
} AcSupportPoint;

typedef struct AcRegionReport {
  size_t n_samples;
  size_t n_outside;
  double max_violation;
  size_t n_midpoints;
  size_t midpoints_outside;
  double midpoint_defect;
  bool passed;
} AcRegionReport;

typedef struct AcPinch {
  size_t i;
  size_t j;
  double lambda;
} AcPinch;

typedef struct AcQkReport {
  bool extreme;
  size_t face_dim;
  size_t rank_p;
  size_t rank_r;
} AcQkReport;

typedef struct AcTheoremSummary {
  size_t n_faces;
  size_t n_pass;
  size_t n_fail;
} AcTheoremSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until
// the next call into the library from the same thread.
const char *ac_last_error(void);

// Static, NUL-terminated version string.
const char *ac_version(void);

// Builds an `n×n` matrix from row-major real and imaginary parts. `im`
// may be NULL for a real matrix.
//
// # Safety
// `re` (and `im` if non-null) must point to `n*n` doubles.
enum AcStatus ac_matrix_new(size_t n, const double *re, const double *im, struct AcMatrix **out_m);

// Parses `{"n": .., "re": [[..]], "im": [[..]]}`.
//
// # Safety
// `json` must be a NUL-terminated string.
enum AcStatus ac_matrix_from_json(const char *json, struct AcMatrix **out_m);

// # Safety
// `m` must be NULL or a handle from this library, not yet freed.
void ac_matrix_free(struct AcMatrix *m);

// Dimension of the matrix, 0 for NULL.
//
// # Safety
// `m` must be NULL or a live handle.
size_t ac_matrix_dim(const struct AcMatrix *m);

// Support value and support point at angle `theta`.
//
// # Safety
// `m` must be a live handle; `c` NULL or `dim(m)` doubles.
enum AcStatus ac_support_point(const struct AcMatrix *m,
                               size_t k,
                               const double *c,
                               double theta,
                               struct AcSupportPoint *out_p);

// Support data on `angles` equally spaced angles.
//
// # Safety
// As for [`ac_support_point`].
enum AcStatus ac_boundary(const struct AcMatrix *m,
                          size_t k,
                          const double *c,
                          size_t angles,
                          struct AcCurve **out_c);

// # Safety
// `c` must be NULL or a live handle.
void ac_curve_free(struct AcCurve *c);

// Number of angles, 0 for NULL.
//
// # Safety
// `c` must be NULL or a live handle.
size_t ac_curve_len(const struct AcCurve *c);

// # Safety
// `c` must be a live handle.
enum AcStatus ac_curve_get(const struct AcCurve *c, size_t index, struct AcSupportPoint *out_p);

// Recomputes every stored witness; `*ok` is false if any fails.
//
// # Safety
// `c` must be a live handle.
enum AcStatus ac_curve_attainment(const struct AcCurve *c, bool *ok);

// Writes `n_samples` points of the range as `x0, y0, x1, y1, …` into
// `xy` (length `2*n_samples`).
//
// # Safety
// `m` live; `c` NULL or `dim(m)` doubles; `xy` room for `2*n_samples`.
enum AcStatus ac_sample_range(const struct AcMatrix *m,
                              size_t k,
                              const double *c,
                              size_t n_samples,
                              uint64_t seed,
                              double *xy);

// Checks interleaved sample points against the curve's support polygon.
//
// # Safety
// `c` live; `xy` holds `2*n_points` doubles.
enum AcStatus ac_certify(const struct AcCurve *c,
                         const double *xy,
                         size_t n_points,
                         double tol,
                         struct AcRegionReport *out_r);

// `*result` is whether `b ≺ c`; both sorted non-increasing, length `n`.
//
// # Safety
// `b` and `c` hold `n` doubles.
enum AcStatus ac_majorizes(const double *b, const double *c, size_t n, bool *result);

// Pinchings taking `c` to `b`. Writes at most `cap` steps and the true
// count to `*len`; returns `BufferTooSmall` if `cap` is short.
//
// # Safety
// `b`, `c` hold `n` doubles; `steps` room for `cap` entries.
enum AcStatus ac_pinching_sequence(const double *c,
                                   const double *b,
                                   size_t n,
                                   struct AcPinch *steps,
                                   size_t cap,
                                   size_t *len);

// Smallest face of `{a : 0 ≤ a ≤ 1, τ(a) = k}` containing `m`.
//
// # Safety
// `m` must be a live handle.
enum AcStatus ac_qk_face(const struct AcMatrix *m, size_t k, struct AcQkReport *out_r);

// `{"d": int, "vertices": [["p/q", ...], ...]}`.
//
// # Safety
// `json` must be a NUL-terminated string.
enum AcStatus ac_polytope_from_json(const char *json, struct AcPolytope **out_p);

// # Safety
// `p` must be NULL or a live handle.
void ac_polytope_free(struct AcPolytope *p);

// Number of vertices after redundant points are dropped, 0 for NULL.
//
// # Safety
// `p` must be NULL or a live handle.
size_t ac_polytope_vertex_count(const struct AcPolytope *p);

// # Safety
// `p` must be a live handle.
enum AcStatus ac_polytope_facial_dimension(const struct AcPolytope *p, size_t *dim);

// `{"A": [["p/q", ...]], "b": ["p/q", ...]}`.
//
// # Safety
// `json` must be a NUL-terminated string.
enum AcStatus ac_subspace_from_json(const char *json, struct AcSubspace **out_h);

// # Safety
// `h` must be NULL or a live handle.
void ac_subspace_free(struct AcSubspace *h);

// Checks `G(K, F) ∩ H = F` for every face `F` of `K ∩ H`, exactly.
//
// # Safety
// `p` and `h` must be live handles.
enum AcStatus ac_check_intersection(const struct AcPolytope *p,
                                    const struct AcSubspace *h,
                                    struct AcTheoremSummary *out_s);

// `{"masses": [..], "target": [[..]], "constraints": [[..]], "z": [..]}`.
//
// # Safety
// `json` must be a NUL-terminated string.
enum AcStatus ac_measure_from_json(const char *json, struct AcMeasure **out_m);

// # Safety
// `m` must be NULL or a live handle.
void ac_measure_free(struct AcMeasure *m);

// Convexity defect of the range after `rounds` halvings of every atom.
//
// # Safety
// `m` must be a live handle.
enum AcStatus ac_measure_defect(const struct AcMeasure *m,
                                size_t rounds,
                                size_t n_pairs,
                                uint64_t seed,
                                double *defect);

// Vertex count and largest number of fractional coordinates over the
// vertices of the relaxed constraint polytope.
//
// # Safety
// `m` must be a live handle.
enum AcStatus ac_measure_vertices(const struct AcMeasure *m,
                                  size_t cap,
                                  size_t *n_vertices,
                                  size_t *max_fractional);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AUTOCONVEX_H */
