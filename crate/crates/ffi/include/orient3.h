#ifndef ORIENT3_H
#define ORIENT3_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum O3Status {
  O3_STATUS_OK = 0,
  O3_STATUS_NULL_POINTER = 1,
  O3_STATUS_INVALID_UTF8 = 2,
  O3_STATUS_PARSE = 3,
  O3_STATUS_INVALID_ARGUMENT = 4,
  O3_STATUS_OVERFLOW = 5,
  O3_STATUS_PANIC = 6,
} O3Status;

// `M_TR` or `M_CR` running on a fixed triangulation.
typedef struct O3FixedChain O3FixedChain;

// `M_EF` running on states with `n` internal vertices.
typedef struct O3FlipChain O3FlipChain;

// An embedded triangulation.
typedef struct O3Triangulation O3Triangulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static nul-terminated string.
const char *o3_version(void);

// Message of the last failed call on this thread. Valid until the next
// failing call on the same thread.
const char *o3_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void o3_string_free(char *s);

// Parses a triangulation from its JSON form.
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum O3Status o3_triangulation_from_json(const char *json, struct O3Triangulation **out);

// The slow-mixing gadget with parameter `t >= 2`.
//
// # Safety
// `out` must be a valid pointer.
enum O3Status o3_triangulation_gadget(size_t t, struct O3Triangulation **out);

// Number of internal vertices, or 0 for a null handle.
//
// # Safety
// `tri` must be null or a live handle.
size_t o3_triangulation_n_internal(const struct O3Triangulation *tri);

// # Safety
// `tri` must be null or a handle not yet freed.
void o3_triangulation_free(struct O3Triangulation *tri);

// Starts `M_TR` (`tower == false`) or `M_CR` from the initial orientation
// of a copy of `tri`.
//
// # Safety
// `tri` must be a live handle and `out` a valid pointer.
enum O3Status o3_fixed_chain_new(const struct O3Triangulation *tri,
                                 bool tower,
                                 uint64_t seed,
                                 struct O3FixedChain **out);

// Runs `steps` steps; the number of accepted moves goes to `accepted`
// when it is not null.
//
// # Safety
// `chain` must be a live handle; `accepted` null or valid.
enum O3Status o3_fixed_chain_step(struct O3FixedChain *chain, uint64_t steps, uint64_t *accepted);

// Current coloured orientation as JSON.
//
// # Safety
// `chain` must be a live handle and `out` a valid pointer.
enum O3Status o3_fixed_chain_state_json(const struct O3FixedChain *chain, char **out);

// # Safety
// `chain` must be null or a handle not yet freed.
void o3_fixed_chain_free(struct O3FixedChain *chain);

// Starts `M_EF` on `n >= 1` internal vertices from the state of the pair
// `+^n -^n` over `(+-)^n`.
//
// # Safety
// `out` must be a valid pointer.
enum O3Status o3_flip_chain_new(size_t n, uint64_t seed, struct O3FlipChain **out);

// # Safety
// `chain` must be a live handle; `accepted` null or valid.
enum O3Status o3_flip_chain_step(struct O3FlipChain *chain, uint64_t steps, uint64_t *accepted);

// Current state as its Dyck pair key, `top|bottom` in `+`/`-`.
//
// # Safety
// `chain` must be a live handle and `out` a valid pointer.
enum O3Status o3_flip_chain_dyck_key(const struct O3FlipChain *chain, char **out);

// Current triangulation and orientation as JSON.
//
// # Safety
// `chain` must be a live handle and `out` a valid pointer.
enum O3Status o3_flip_chain_state_json(const struct O3FlipChain *chain, char **out);

// # Safety
// `chain` must be null or a handle not yet freed.
void o3_flip_chain_free(struct O3FlipChain *chain);

// Number of pairs of non-crossing Dyck paths of semilength `n`.
//
// # Safety
// `out` must be a valid pointer.
enum O3Status o3_dyck_pair_count(uint64_t n, uint64_t *out);

// The state of a pair key, as JSON.
//
// # Safety
// `key` must be a nul-terminated string and `out` a valid pointer.
enum O3Status o3_dyck_decode(const char *key, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORIENT3_H */
