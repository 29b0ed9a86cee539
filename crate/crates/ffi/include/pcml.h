#ifndef PCML_H
#define PCML_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PcmlStatus {
  PCML_STATUS_OK = 0,
  PCML_STATUS_NULL_POINTER = 1,
  PCML_STATUS_INVALID_UTF8 = 2,
  PCML_STATUS_PARSE_ERROR = 3,
  PCML_STATUS_INVALID_ARGUMENT = 4,
  PCML_STATUS_ALGEBRA_MISMATCH = 5,
  PCML_STATUS_OVERFLOW = 6,
  PCML_STATUS_PANIC = 7,
} PcmlStatus;

typedef struct PcmlAlgebra PcmlAlgebra;

typedef struct PcmlElement PcmlElement;

typedef struct PcmlGraph PcmlGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *pcml_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pcml_string_free(char *s);

/**
 * Parses a graph description: `cycle:<n>`, `complete:<n>`, `path:<n>`,
 * `empty:<n>` or JSON `{"n":..,"edges":[[i,j],..]}`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum PcmlStatus pcml_graph_parse(const char *spec, struct PcmlGraph **out);

/**
 * # Safety
 * `g` must be a live graph handle or NULL.
 */
void pcml_graph_free(struct PcmlGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle; `out` writable.
 */
enum PcmlStatus pcml_graph_vertex_count(const struct PcmlGraph *g, size_t *out);

/**
 * Number of vertices left after collapsing equal closed neighbourhoods.
 *
 * # Safety
 * `g` must be a live graph handle; `out` writable.
 */
enum PcmlStatus pcml_graph_compaction_size(const struct PcmlGraph *g, size_t *out);

/**
 * The algebra of a graph, generators ordered by index.
 *
 * # Safety
 * `g` must be a live graph handle; `out` writable.
 */
enum PcmlStatus pcml_algebra_new(const struct PcmlGraph *g, struct PcmlAlgebra **out);

/**
 * # Safety
 * `a` must be a live algebra handle or NULL.
 */
void pcml_algebra_free(struct PcmlAlgebra *a);

/**
 * Parses an element and brings it to normal form.
 *
 * # Safety
 * `alg` must be a live algebra handle, `src` NUL-terminated, `out` writable.
 */
enum PcmlStatus pcml_element_parse(const struct PcmlAlgebra *alg,
                                   const char *src,
                                   struct PcmlElement **out);

/**
 * # Safety
 * `e` must be a live element handle or NULL.
 */
void pcml_element_free(struct PcmlElement *e);

/**
 * # Safety
 * `a` and `b` must be live element handles; `out` writable.
 */
enum PcmlStatus pcml_element_add(const struct PcmlElement *a,
                                 const struct PcmlElement *b,
                                 struct PcmlElement **out);

/**
 * # Safety
 * `a` and `b` must be live element handles; `out` writable.
 */
enum PcmlStatus pcml_element_bracket(const struct PcmlElement *a,
                                     const struct PcmlElement *b,
                                     struct PcmlElement **out);

/**
 * # Safety
 * `e` must be a live element handle; `out` writable.
 */
enum PcmlStatus pcml_element_is_zero(const struct PcmlElement *e, bool *out);

/**
 * Normal form as text; free the result with `pcml_string_free`.
 *
 * # Safety
 * `e` must be a live element handle; `out` writable.
 */
enum PcmlStatus pcml_element_to_string(const struct PcmlElement *e, char **out);

/**
 * Least `λ` with `φ_λ(e) ≠ 0` from then on, for the map sending
 * generator `removed` to `λ` times generator `kept`.
 *
 * # Safety
 * `e` must be a live element handle; `out` writable.
 */
enum PcmlStatus pcml_lambda_zero(const struct PcmlElement *e,
                                 size_t removed,
                                 size_t kept,
                                 uint64_t *out);

/**
 * Whether `M(C_n)` and `M(C_m)` are separated by an explicit sentence.
 *
 * # Safety
 * `out` must be writable.
 */
enum PcmlStatus pcml_distinguish_cycles(size_t n, size_t m, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PCML_H */
