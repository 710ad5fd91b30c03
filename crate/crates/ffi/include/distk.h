#ifndef DISTK_H
#define DISTK_H

/* Generated by cbindgen from the distk-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible FFI call.
typedef enum DkStatus {
  // Success.
  DK_OK = 0,
  // A required pointer argument was null.
  DK_ERR_NULL = 1,
  // A string argument was not valid UTF-8.
  DK_ERR_UTF8 = 2,
  // Graph construction or parsing failed.
  DK_ERR_GRAPH = 3,
  // An argument was out of range for the operation.
  DK_ERR_ARGUMENT = 4,
  // The engine failed (size ceiling, overflow, non-convergence).
  DK_ERR_ENGINE = 5,
  // A provided buffer was too small; retry with the reported length.
  DK_ERR_BUFFER = 6,
  // An internal panic was caught at the boundary.
  DK_ERR_INTERNAL = 7,
} DkStatus;

// Opaque connected-graph handle.
typedef struct DkGraph DkGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread. Never null.
const char *dk_last_error_message(void);

// Version of the underlying library as a static C string.
const char *dk_version(void);

// Builds a graph from a family tag such as "K:3", "P:4", "C:5", "S:3".
//
// # Safety
// `tag` must be a valid NUL-terminated string; `out` must be a valid
// pointer to receive the handle.
enum DkStatus dk_graph_from_family(const char *tag, struct DkGraph **out);

// Parses an edge-list graph ("u v" per line, '#' comments, optional
// "n <count>" header).
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be a valid
// pointer to receive the handle.
enum DkStatus dk_graph_parse(const char *text, struct DkGraph **out);

// Releases a graph handle. Null is a no-op.
//
// # Safety
// `g` must be a handle returned by a constructor, released at most once.
void dk_graph_free(struct DkGraph *g);

// Number of vertices, or 0 if the handle is null.
//
// # Safety
// `g` must be a live handle or null.
uint32_t dk_graph_vertices(const struct DkGraph *g);

// Number of edges, or 0 if the handle is null.
//
// # Safety
// `g` must be a live handle or null.
uint64_t dk_graph_edges(const struct DkGraph *g);

// Graph diameter, or 0 if the handle is null.
//
// # Safety
// `g` must be a live handle or null.
uint32_t dk_graph_diameter(const struct DkGraph *g);

// Mean degree 2|E|/|V| as a double.
//
// # Safety
// `g` must be a live handle or null; `out` must be valid.
enum DkStatus dk_graph_mean_degree(const struct DkGraph *g, double *out);

// Normalized moment of the distance-k adjacency of the N-th Cartesian
// power: the m-th trace moment divided by N^(k*m/2), as a double.
//
// # Safety
// `g` must be a live handle; `out` must be valid.
enum DkStatus dk_moment_distance_k(const struct DkGraph *g,
                                   uint64_t n_copies,
                                   uint32_t k,
                                   uint32_t m,
                                   double *out);

// Exact raw moment of the distance-k adjacency as a newly allocated
// rational string "p/q" (or an integer string); release it with
// [`dk_string_free`].
//
// # Safety
// `g` must be a live handle; `out` must be valid.
enum DkStatus dk_moment_distance_k_exact(const struct DkGraph *g,
                                         uint64_t n_copies,
                                         uint32_t k,
                                         uint32_t m,
                                         char **out);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must originate from this library, released at most once.
void dk_string_free(char *s);

// m-th moment of the limit law `c^(k/2) H_k(g) / k!` for standard normal
// `g`, as a double.
//
// # Safety
// `g` must be a live handle; `out` must be valid.
enum DkStatus dk_limit_moment(const struct DkGraph *g, uint32_t k, uint32_t m, double *out);

// Eigenvalues (ascending) of the explicit distance-k adjacency of the
// N-th Cartesian power. Two-call protocol: the required length is always
// written to `needed` (the explicit dimension |V|^N); when `out` is null
// the call stops there, otherwise `len` must be at least that dimension.
// The explicit matrix is refused above `ceiling` (pass 0 for the default
// of 4096).
//
// # Safety
// `g` must be a live handle; `needed` must be valid; `out`, when non-null,
// must point to at least `len` doubles.
enum DkStatus dk_spectrum(const struct DkGraph *g,
                          uint32_t n_copies,
                          uint32_t k,
                          uint64_t ceiling,
                          double *out,
                          size_t len,
                          size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISTK_H */
