#ifndef RECTILENS_H
#define RECTILENS_H

/* Generated by cbindgen from rectilens-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Corpus kinds accepted by [`rl_space_generate`].
typedef enum RlCorpusKind {
  RL_CORPUS_KIND_SEGMENT = 0,
  RL_CORPUS_KIND_CIRCLE = 1,
  RL_CORPUS_KIND_LIPSCHITZ_GRAPH = 2,
  RL_CORPUS_KIND_SPIRAL = 3,
  RL_CORPUS_KIND_FOUR_CORNER_CANTOR = 4,
} RlCorpusKind;

// Status codes mirroring the library error taxonomy.
typedef enum RlStatus {
  RL_STATUS_OK = 0,
  // Invalid input (shape, domain, parse, unsupported representation).
  RL_STATUS_DOMAIN = 2,
  // A stated precondition does not hold; the operation refused to run.
  RL_STATUS_REFUSED = 3,
  // Internal failure (solver, I/O).
  RL_STATUS_INTERNAL = 1,
  // A pointer argument was NULL.
  RL_STATUS_NULL_POINTER = 4,
} RlStatus;

// Opaque handle to a measured metric space.
typedef struct RlSpace RlSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message for this thread, or NULL when the last call
// succeeded. The pointer is owned by the library and valid until the
// next failing call on the same thread.
const char *rl_last_error(void);

// Free a string returned by the library. NULL is accepted and ignored.
//
// # Safety
// `s` must be a pointer previously returned by a `rl_*_json` function
// and not yet freed.
void rl_string_free(char *s);

// Load a space from a CSV or JSON file (dispatch on the extension).
// Returns NULL on failure; see [`rl_last_error`].
//
// # Safety
// `path` must be a NUL-terminated string valid for the duration of the
// call.
struct RlSpace *rl_space_load(const char *path);

// Build a space from a full distance matrix (row-major `n x n`) and a
// weight vector of length `n`. `triangle_tol < 0` selects the default
// tolerance. Returns NULL on failure.
//
// # Safety
// `matrix` must point to `n * n` doubles and `weights` to `n` doubles.
struct RlSpace *rl_space_from_matrix(const double *matrix,
                                     const double *weights,
                                     unsigned long long n,
                                     double triangle_tol);

// Generate a reference corpus. `m` is the sample count for curve kinds,
// `depth` the Cantor depth, `param` the slope bound (graph) or decay
// (spiral). Returns NULL on failure.
struct RlSpace *rl_space_generate(enum RlCorpusKind kind,
                                  unsigned long long m,
                                  uint32_t depth,
                                  double param,
                                  unsigned long long seed);

// Free a space handle. NULL is accepted and ignored.
//
// # Safety
// `space` must be a pointer previously returned by a constructor and
// not yet freed.
void rl_space_free(struct RlSpace *space);

// Number of points.
//
// # Safety
// `space` must be a live handle.
unsigned long long rl_space_len(const struct RlSpace *space);

// Total mass.
//
// # Safety
// `space` must be a live handle.
double rl_space_total_mass(const struct RlSpace *space);

// Quasi-path certificate between points `a` and `b`, as a JSON string
// (`{"certificate": "path" | "split", ...}`). The caller frees `*out`
// with [`rl_string_free`].
//
// # Safety
// `space` must be a live handle and `out` a valid pointer.
enum RlStatus rl_quasi_path_json(const struct RlSpace *space,
                                 unsigned long long a,
                                 unsigned long long b,
                                 double delta,
                                 double locality,
                                 char **out);

// Extract a Besicovitch partition family and verify it; the result JSON
// carries the partition count, verification flags and gap list. `rhat`
// at or below 0 selects the default (a quarter of the seed-net scale).
// The caller frees `*out` with [`rl_string_free`].
//
// # Safety
// `space` must be a live handle and `out` a valid pointer.
enum RlStatus rl_besipart_json(const struct RlSpace *space,
                               double delta,
                               double locality,
                               double rhat,
                               char **out);

// Classify every support point; the result JSON carries the ladder, the
// per-point labels and the aggregate fractions. `r0` at or below 0
// selects the default ladder top (diameter / 4). The caller frees
// `*out` with [`rl_string_free`].
//
// # Safety
// `space` must be a live handle and `out` a valid pointer.
enum RlStatus rl_classify_json(const struct RlSpace *space,
                               double delta,
                               double locality,
                               double r0,
                               double lambda,
                               char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RECTILENS_H */
