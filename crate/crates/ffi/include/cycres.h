#ifndef CYCRES_H
#define CYCRES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of an FFI call. The values match the exit codes of the CLI.
typedef enum CycStatus {
  CYC_STATUS_OK = 0,
  CYC_STATUS_VERIFICATION_FAILED = 1,
  CYC_STATUS_INVALID = 2,
  CYC_STATUS_NOT_IRREDUCIBLE = 3,
  CYC_STATUS_NULL_ARGUMENT = 4,
  CYC_STATUS_PANIC = 5,
} CycStatus;

// A built complex.
typedef struct CycComplex CycComplex;

// A parsed weighted digraph.
typedef struct CycDigraph CycDigraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *cyc_last_error(void);

// Parses a digraph from JSON (`{"n", "arcs"}` or `{"matrix"}`).
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum CycStatus cyc_digraph_parse(const char *json, struct CycDigraph **out);

// # Safety
// `g` must come from [`cyc_digraph_parse`] and not be freed twice. Null is ignored.
void cyc_digraph_free(struct CycDigraph *g);

// Number of vertices, 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t cyc_digraph_vertex_count(const struct CycDigraph *g);

// Classification as JSON: class, adjugate row, grading, depth, blocks and
// relabeling. `omega` is 1-based, 0 selects the last vertex. Free the
// result with [`cyc_string_free`].
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum CycStatus cyc_classify_json(const struct CycDigraph *g, size_t omega, char **out);

// Relabels by distance from `omega` (1-based, 0 for the last vertex) and
// builds the complex.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum CycStatus cyc_complex_build(const struct CycDigraph *g, size_t omega, struct CycComplex **out);

// Loads a complex from its JSON export.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum CycStatus cyc_complex_load(const char *json, struct CycComplex **out);

// # Safety
// `c` must come from this library and not be freed twice. Null is ignored.
void cyc_complex_free(struct CycComplex *c);

// Number of free modules, which equals the vertex count; 0 for null.
//
// # Safety
// `c` must be null or a live handle.
size_t cyc_complex_length(const struct CycComplex *c);

// Rank of the free module in homological degree `k`.
//
// # Safety
// `c` must be a live handle and `out` a valid pointer.
enum CycStatus cyc_complex_rank(const struct CycComplex *c, size_t k, size_t *out);

// 1 when every differential entry lies in the irrelevant ideal, 0 when not,
// -1 for null.
//
// # Safety
// `c` must be null or a live handle.
int32_t cyc_complex_is_minimal(const struct CycComplex *c);

// The complex as JSON, loadable by [`cyc_complex_load`].
//
// # Safety
// `c` must be a live handle and `out` a valid pointer.
enum CycStatus cyc_complex_export_json(const struct CycComplex *c, char **out);

// Runs every check and writes the JSON report. A negative `max_degree`
// selects the default bound. Returns `VerificationFailed` when a check fails;
// the report is written either way.
//
// # Safety
// `c` must be a live handle and `out` a valid pointer.
enum CycStatus cyc_complex_verify_json(const struct CycComplex *c,
                                       int64_t max_degree,
                                       uint64_t seed,
                                       char **out);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void cyc_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CYCRES_H */
