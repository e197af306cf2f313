#ifndef SHATTER_H
#define SHATTER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum ShatterStatus {
  SHATTER_STATUS_OK = 0,
  SHATTER_STATUS_NULL_POINTER = 1,
  SHATTER_STATUS_INVALID_ARGUMENT = 2,
  // Node id, edge or index outside the valid range.
  SHATTER_STATUS_OUT_OF_RANGE = 3,
  SHATTER_STATUS_IO = 4,
  SHATTER_STATUS_PARSE = 5,
  SHATTER_STATUS_TOO_LARGE = 6,
  SHATTER_STATUS_PANIC = 7,
} ShatterStatus;

typedef enum ShatterOrientation {
  SHATTER_ORIENTATION_MINIMIZE = 0,
  SHATTER_ORIENTATION_MAXIMIZE = 1,
} ShatterOrientation;

// Opaque weighted graph.
typedef struct ShatterGraph ShatterGraph;

// Opaque removal trajectory.
typedef struct ShatterTrajectory ShatterTrajectory;

// One trajectory point; index 0 is the state before the first removal.
typedef struct ShatterPoint {
  size_t step;
  double cum_cost;
  size_t max_component;
} ShatterPoint;

typedef struct ShatterTrimReport {
  double total_cost;
  size_t removed;
  double t;
  size_t d;
  double beta;
  size_t final_max_component;
} ShatterTrimReport;

// Predictions for `G(n, cn)`; fields without a value (no giant component) are NaN.
typedef struct ShatterTheoryReport {
  size_t n;
  size_t m;
  double c;
  double l;
  double r;
  double mu;
  double threshold_unweighted;
  double expected_maxsf;
  double expected_l_prime;
  double r_prime;
  double threshold_weighted;
} ShatterTheoryReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *shatter_version(void);

// Message of the last failed call on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *shatter_last_error_message(void);

// Edgeless graph on `n` nodes.
//
// # Safety
// `out` must be valid for writes.
enum ShatterStatus shatter_graph_new(size_t n, struct ShatterGraph **out);

// # Safety
// `graph` must be NULL or a handle from this library that has not been freed.
void shatter_graph_free(struct ShatterGraph *graph);

// # Safety
// `graph` must be a live handle.
enum ShatterStatus shatter_graph_add_edge(struct ShatterGraph *graph, size_t u, size_t v, double w);

// Reads a whitespace-separated `u v [w]` edge-list file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be valid for writes.
enum ShatterStatus shatter_graph_load(const char *path, struct ShatterGraph **out);

// # Safety
// `graph` must be a live handle; `path` a NUL-terminated string.
enum ShatterStatus shatter_graph_save(const struct ShatterGraph *graph, const char *path);

// Uniform random graph with `n` nodes and `m` unit-weight edges.
//
// # Safety
// `out` must be valid for writes.
enum ShatterStatus shatter_graph_gnm(size_t n,
                                     size_t m,
                                     uint64_t seed,
                                     uint64_t stream,
                                     struct ShatterGraph **out);

// Unit-weight graph from a topology descriptor such as `gnm:n=50,m=100` or
// `powlaw-deg:n=50,exp=3,kmin=1`.
//
// # Safety
// `descriptor` must be a NUL-terminated string; `out` must be valid for writes.
enum ShatterStatus shatter_graph_generate(const char *descriptor,
                                          uint64_t seed,
                                          uint64_t stream,
                                          struct ShatterGraph **out);

// Replaces every edge weight with an i.i.d. draw from `model`
// (`unif`, `exp:2`, `pareto:3,0.25`, `const:1`).
//
// # Safety
// `graph` must be a live handle; `model` a NUL-terminated string.
enum ShatterStatus shatter_graph_assign_weights(struct ShatterGraph *graph,
                                                const char *model,
                                                uint64_t seed,
                                                uint64_t stream);

// # Safety
// `graph` must be a live handle; output pointers valid for writes.
enum ShatterStatus shatter_graph_counts(const struct ShatterGraph *graph,
                                        size_t *nodes,
                                        size_t *edges);

// # Safety
// `graph` must be a live handle; `out` valid for writes.
enum ShatterStatus shatter_graph_max_component(const struct ShatterGraph *graph, size_t *out);

// Mean squared component size per node.
//
// # Safety
// `graph` must be a live handle; `out` valid for writes.
enum ShatterStatus shatter_graph_susceptibility(const struct ShatterGraph *graph, double *out);

// Total weight of a maximum spanning forest.
//
// # Safety
// `graph` must be a live handle; `out` valid for writes.
enum ShatterStatus shatter_graph_maxsf_weight(const struct ShatterGraph *graph, double *out);

// Runs a greedy heuristic to completion. `method` is one of
// `maxsf-susceptibility`, `maxsf-betweenness`, `full-susceptibility`,
// `full-betweenness`.
//
// # Safety
// `graph` must be a live handle; `method` a NUL-terminated string; `out`
// valid for writes.
enum ShatterStatus shatter_run_heuristic(const struct ShatterGraph *graph,
                                         const char *method,
                                         enum ShatterOrientation orientation,
                                         uint64_t seed,
                                         uint64_t stream,
                                         struct ShatterTrajectory **out);

// Number of points, including the initial one.
//
// # Safety
// `trajectory` must be a live handle; `out` valid for writes.
enum ShatterStatus shatter_trajectory_len(const struct ShatterTrajectory *trajectory, size_t *out);

// # Safety
// `trajectory` must be a live handle; `out` valid for writes.
enum ShatterStatus shatter_trajectory_point(const struct ShatterTrajectory *trajectory,
                                            size_t index,
                                            struct ShatterPoint *out);

// # Safety
// `trajectory` must be NULL or a handle that has not been freed.
void shatter_trajectory_free(struct ShatterTrajectory *trajectory);

// Spanning-tree construction with tree trimming. A `weight_cap` that is not
// positive means "use the heaviest edge".
//
// # Safety
// `graph` must be a live handle; `out` valid for writes.
enum ShatterStatus shatter_theorem_b(const struct ShatterGraph *graph,
                                     double gamma,
                                     double weight_cap,
                                     struct ShatterTrimReport *out);

// Exact minimum removal cost for component cap `k` (at most 22 edges).
//
// # Safety
// `graph` must be a live handle; `out` valid for writes.
enum ShatterStatus shatter_oracle_cost(const struct ShatterGraph *graph, size_t k, double *out);

// # Safety
// `model` must be a NUL-terminated string; `out` valid for writes.
enum ShatterStatus shatter_predict(double c,
                                   const char *model,
                                   size_t n,
                                   struct ShatterTheoryReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHATTER_H */
