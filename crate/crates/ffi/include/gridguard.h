#ifndef GRIDGUARD_H
#define GRIDGUARD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GgSolver {
  GG_SOLVER_GREEDY = 0,
  GG_SOLVER_EXACT = 1,
  GG_SOLVER_BOTH = 2,
} GgSolver;

// Result code of every fallible call.
typedef enum GgStatus {
  GG_STATUS_OK = 0,
  GG_STATUS_NULL_POINTER = 1,
  GG_STATUS_INVALID_ARGUMENT = 2,
  GG_STATUS_PARSE_ERROR = 3,
  GG_STATUS_NOT_SIMPLE = 4,
  GG_STATUS_BUDGET_EXCEEDED = 5,
  GG_STATUS_INTERNAL = 6,
  GG_STATUS_PANIC = 7,
} GgStatus;

typedef enum GgStrategy {
  GG_STRATEGY_PAPER1 = 0,
  GG_STRATEGY_PAPER2 = 1,
  GG_STRATEGY_TRAPEZOID = 2,
  GG_STRATEGY_GRID = 3,
} GgStrategy;

// Opaque polygon handle.
typedef struct GgPolygon GgPolygon;

// Opaque solution handle.
typedef struct GgSolution GgSolution;

// Solver options. Start from [`gg_options_default`].
typedef struct GgOptions {
  enum GgStrategy strategy;
  uint32_t k;
  uint32_t grid_resolution;
  size_t max_cells;
  enum GgSolver solver;
  // Coverage samples; 0 skips verification.
  size_t verify_samples;
  uint64_t seed;
  uint64_t exact_budget;
  // Worker threads; 0 uses the default pool.
  size_t threads;
} GgOptions;

// Counts describing a solution.
typedef struct GgStats {
  size_t vertex_count;
  size_t scr_count;
  size_t tsr_count;
  size_t gr_count;
  size_t guard_count;
  // Fraction of samples seen, or -1 when verification did not run.
  double coverage;
} GgStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL
// terminated, truncated to `len`). Returns the full message length, 0 when
// there is none.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t gg_last_error(char *buf, size_t len);

// Static description of a status code.
const char *gg_status_str(enum GgStatus status);

// Parses polygon text ("x y" per line, `#` comments) into `*out`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum GgStatus gg_polygon_from_text(const char *text, struct GgPolygon **out);

// Builds a polygon from `n` interleaved `x, y` doubles, each converted
// exactly.
//
// # Safety
// `xy` must point to `2 * n` doubles; `out` must be writable.
enum GgStatus gg_polygon_from_coords(const double *xy, size_t n, struct GgPolygon **out);

// Number of vertices, 0 for a null handle.
//
// # Safety
// `poly` must be null or a live handle.
size_t gg_polygon_vertex_count(const struct GgPolygon *poly);

// # Safety
// `poly` must be null or a handle not yet freed.
void gg_polygon_free(struct GgPolygon *poly);

struct GgOptions gg_options_default(void);

// Places guards in `poly`. `options` may be null for the defaults.
//
// # Safety
// `poly` must be a live handle, `options` null or valid, `out` writable.
enum GgStatus gg_solve(const struct GgPolygon *poly,
                       const struct GgOptions *options,
                       struct GgSolution **out);

// # Safety
// `sol` must be a live handle and `out` writable.
enum GgStatus gg_solution_stats(const struct GgSolution *sol, struct GgStats *out);

// Guard `i` rounded to doubles.
//
// # Safety
// `sol` must be a live handle; `x` and `y` writable.
enum GgStatus gg_solution_guard(const struct GgSolution *sol, size_t i, double *x, double *y);

// JSON report; release it with [`gg_string_free`]. Null on bad input.
//
// # Safety
// `sol` must be null or a live handle.
char *gg_solution_to_json(const struct GgSolution *sol);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void gg_string_free(char *s);

// # Safety
// `sol` must be null or a handle not yet freed.
void gg_solution_free(struct GgSolution *sol);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRIDGUARD_H */
