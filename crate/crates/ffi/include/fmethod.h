#ifndef FMETHOD_H
#define FMETHOD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call. Zero is success.
typedef enum FmStatus {
  FM_STATUS_OK = 0,
  FM_STATUS_NULL_POINTER = 1,
  FM_STATUS_INVALID_ARGUMENT = 2,
  FM_STATUS_UNSUPPORTED = 3,
  // The parameters are degenerate or admit no singular vector.
  FM_STATUS_NO_SOLUTION = 4,
  // A verification ran and did not pass; the report is still written.
  FM_STATUS_VERIFICATION_FAILED = 5,
  FM_STATUS_INTERNAL = 6,
  FM_STATUS_PANIC = 7,
} FmStatus;

typedef enum FmFamily {
  FM_FAMILY_SO = 0,
  FM_FAMILY_SP = 1,
  FM_FAMILY_UU = 2,
} FmFamily;

typedef enum FmFormat {
  FM_FORMAT_TEXT = 0,
  FM_FORMAT_LATEX = 1,
  FM_FORMAT_JSON = 2,
} FmFormat;

// Opaque geometry handle.
typedef struct FmGeometry FmGeometry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *fm_version(void);

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *fm_last_error(void);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a pointer obtained from this library and not yet freed.
void fm_string_free(char *s);

// Create a geometry handle; release it with [`fm_geometry_free`].
//
// # Safety
// `out` must be valid for one pointer write.
enum FmStatus fm_geometry_new(enum FmFamily family, size_t n, struct FmGeometry **out);

// # Safety
// `geo` must be null or a handle from [`fm_geometry_new`] that is not used afterwards.
void fm_geometry_free(struct FmGeometry *geo);

// JSON description of the geometry: parameters, variables and generators.
//
// # Safety
// `geo` must be a live handle and `out` valid for one pointer write.
enum FmStatus fm_geometry_describe(const struct FmGeometry *geo, char **out);

// The differential operator of degree `a`.
//
// `values` assigns numbers to parameters, e.g. `"l=7/2"` or `"lp=2,lpp=0"`.
//
// # Safety
// `geo` must be a live handle, `values` null or NUL-terminated, and `out`
// valid for one pointer write.
enum FmStatus fm_singular(const struct FmGeometry *geo,
                          uint32_t a,
                          const char *values,
                          enum FmFormat format,
                          char **out);

// The radial ODE of degree `a` with symbolic parameters.
//
// # Safety
// `geo` must be a live handle and `out` valid for one pointer write.
enum FmStatus fm_ode(const struct FmGeometry *geo,
                     uint32_t a,
                     bool classical,
                     enum FmFormat format,
                     char **out);

// Check the solved operator of degree `a` against its closed form and, where
// available, the intertwining property on monomials of degree at most `max_degree`.
//
// Writes a one-line-per-check report to `report` (may be null) and returns
// [`FmStatus::VerificationFailed`] if any check fails.
//
// # Safety
// `geo` must be a live handle and `report` null or valid for one pointer write.
enum FmStatus fm_verify(const struct FmGeometry *geo,
                        uint32_t a,
                        uint32_t max_degree,
                        char **report);

// Rankin–Cohen bracket of `E_{k1}` and `E_{k2}` up to `q^terms`.
//
// If `delta_ratio` is non-null, the rational `c` with bracket `= c·Δ` is written
// there, or [`FmStatus::VerificationFailed`] is returned when there is none.
//
// # Safety
// `out` must be valid for one pointer write, `delta_ratio` null or valid.
enum FmStatus fm_rc_bracket(int64_t k1,
                            int64_t k2,
                            uint32_t a,
                            size_t terms,
                            enum FmFormat format,
                            char **out,
                            char **delta_ratio);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FMETHOD_H */
