#ifndef TCOLOR_H
#define TCOLOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_POINTER = 1,
  TC_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed map text or arguments.
   */
  TC_STATUS_INPUT_ERROR = 3,
  /**
   * A well-formed instance that the operation cannot handle.
   */
  TC_STATUS_DOMAIN_ERROR = 4,
  /**
   * Representativity below 10 without `force`.
   */
  TC_STATUS_LOW_REPRESENTATIVITY = 5,
  TC_STATUS_BUDGET_EXHAUSTED = 6,
  TC_STATUS_BUFFER_TOO_SMALL = 7,
  TC_STATUS_PANIC = 8,
} TcStatus;

/**
 * An immutable torus map.
 */
typedef struct TcMap TcMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *tc_version(void);

/**
 * Message of the last failed call on this thread, or "" after a
 * success. Valid until the next call on the same thread.
 */
const char *tc_last_error(void);

/**
 * Parse TORUSMAP text into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TcStatus tc_map_parse(const char *text, struct TcMap **out);

/**
 * Build Γ(ℤₙ, {s1, s2, s1+s2}) into a new handle stored in `*out`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TcStatus tc_map_cayley(size_t n, int64_t s1, int64_t s2, struct TcMap **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `map` must come from this library and not be used afterwards.
 */
void tc_map_free(struct TcMap *map);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `map` must be null or a live handle.
 */
size_t tc_map_num_vertices(const struct TcMap *map);

/**
 * Canonical TORUSMAP text in a new string freed by `tc_string_free`.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum TcStatus tc_map_to_text(const struct TcMap *map, char **out);

/**
 * # Safety
 * `s` must be null or come from `tc_map_to_text`.
 */
void tc_string_free(char *s);

/**
 * Whether every face is a triangle and every degree is even.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum TcStatus tc_map_is_eulerian_triangulation(const struct TcMap *map, bool *out);

/**
 * Length of a shortest non-contractible cycle.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum TcStatus tc_map_representativity(const struct TcMap *map, size_t *out);

/**
 * Write a verified 4-coloring into `colors[0..V]`. `len` must be at
 * least the vertex count.
 *
 * # Safety
 * `map` must be a live handle and `colors` valid for `len` bytes.
 */
enum TcStatus tc_four_color(const struct TcMap *map, bool force, uint8_t *colors, size_t len);

/**
 * Whether `colors[0..len]` is a proper coloring with colors below `k`.
 *
 * # Safety
 * `map` must be a live handle, `colors` valid for `len` bytes and
 * `out` a valid pointer.
 */
enum TcStatus tc_verify_coloring(const struct TcMap *map,
                                 const uint8_t *colors,
                                 size_t len,
                                 uint8_t k,
                                 bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TCOLOR_H */
