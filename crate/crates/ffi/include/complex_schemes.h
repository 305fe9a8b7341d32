#ifndef COMPLEX_SCHEMES_H
#define COMPLEX_SCHEMES_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_NULL_POINTER = 1,
  CS_STATUS_INVALID_UTF8 = 2,
  CS_STATUS_PARSE = 3,
  CS_STATUS_JSON = 4,
  CS_STATUS_INVALID_SCHEME = 5,
  CS_STATUS_PRECONDITION = 6,
  CS_STATUS_INVALID_PATH = 7,
  CS_STATUS_NOT_SWAPPABLE = 8,
  CS_STATUS_LIMIT_EXCEEDED = 9,
  CS_STATUS_PANIC = 10,
} CsStatus;

typedef enum CsSearchStatus {
  CS_SEARCH_STATUS_ALREADY_SATISFIES = 0,
  CS_SEARCH_STATUS_REACHED = 1,
  CS_SEARCH_STATUS_UNREACHABLE = 2,
} CsSearchStatus;

// Opaque scheme handle.
typedef struct CsScheme CsScheme;

typedef struct CsLambdaCounts {
  uint64_t lp_plus;
  uint64_t lp_minus;
  uint64_t ln_plus;
  uint64_t ln_minus;
} CsLambdaCounts;

typedef struct CsStats {
  uint32_t degree;
  bool pseudoline;
  uint64_t l;
  uint64_t r;
  uint64_t g;
  // False for even degree, where `k` is meaningless and set to 0.
  bool has_k;
  uint64_t k;
  uint64_t s;
  struct CsLambdaCounts lambdas;
} CsStats;

typedef struct CsCheckReport {
  uint32_t degree;
  int64_t k;
  int64_t l;
  int64_t s;
  struct CsLambdaCounts lambdas;
  int64_t left_lhs;
  int64_t left_rhs;
  int64_t left_margin;
  int64_t right_lhs;
  int64_t right_rhs;
  int64_t right_margin;
  bool left_holds;
  bool right_holds;
  bool both_hold;
} CsCheckReport;

// Filled by `cs_swap_search`; release the owned members with
// `cs_search_result_clear`.
typedef struct CsSearchResult {
  enum CsSearchStatus status;
  // Number of moves in the witness; 0 when unreachable.
  size_t distance;
  size_t explored;
  // JSON array of paths, one per move, or null when unreachable.
  char *moves_json;
  // The scheme reached, or null when unreachable.
  struct CsScheme *result;
} CsSearchResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failed call on this thread, or null. The
// pointer stays valid until the next call into this library on the thread.
const char *cs_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *cs_version(void);

// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum CsStatus cs_scheme_parse(const char *text, uint32_t degree, struct CsScheme **out);

// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum CsStatus cs_scheme_from_json(const char *json, struct CsScheme **out);

// Canonical Viro notation.
//
// # Safety
// `s` must be a live handle and `out` a writable pointer.
enum CsStatus cs_scheme_to_viro(const struct CsScheme *s, char **out);

// # Safety
// `s` must be a live handle and `out` a writable pointer.
enum CsStatus cs_scheme_to_json(const struct CsScheme *s, char **out);

// Degree of the scheme, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
uint32_t cs_scheme_degree(const struct CsScheme *s);

// Number of ovals, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t cs_scheme_oval_count(const struct CsScheme *s);

// # Safety
// `s` must be a live handle and `out` a writable pointer.
enum CsStatus cs_scheme_stats(const struct CsScheme *s, struct CsStats *out);

// Evaluates both orientation inequalities.
//
// # Safety
// `s` must be a live handle and `out` a writable pointer.
enum CsStatus cs_scheme_check(const struct CsScheme *s, struct CsCheckReport *out);

// Triples every oval with the default sign rule.
//
// # Safety
// `s` must be a live handle and `out` a writable pointer.
enum CsStatus cs_scheme_triple(const struct CsScheme *s, struct CsScheme **out);

// Swaps the pair whose outer oval is at `path[0..path_len]`.
//
// # Safety
// `s` must be a live handle, `path` must point to `path_len` readable
// values (or be null when `path_len` is 0), and `out` a writable pointer.
enum CsStatus cs_scheme_swap(const struct CsScheme *s,
                             const size_t *path,
                             size_t path_len,
                             struct CsScheme **out);

// Breadth-first search for the fewest swaps reaching a scheme that
// satisfies both inequalities. Returns `LimitExceeded` past `max_states`.
//
// # Safety
// `s` must be a live handle and `out` a writable pointer.
enum CsStatus cs_swap_search(const struct CsScheme *s,
                             size_t max_states,
                             struct CsSearchResult *out);

// Frees the owned members of a search result and nulls them.
//
// # Safety
// `r` must be null or point to a result filled by `cs_swap_search`.
void cs_search_result_clear(struct CsSearchResult *r);

// The Hilbert-type M-curve of degree `4p - 1` (`p >= 2`), or the
// intermediate curve of degree `4p + 1`.
//
// # Safety
// `out` must be a writable pointer.
enum CsStatus cs_hilbert(uint32_t p, bool intermediate, struct CsScheme **out);

// The tripled degree `12p - 3` scheme and its check report. `report` may
// be null.
//
// # Safety
// `out` must be a writable pointer; `report` null or writable.
enum CsStatus cs_unrealizable_example(uint32_t p,
                                      struct CsScheme **out,
                                      struct CsCheckReport *report);

// # Safety
// `s` must be null or a handle from this library not yet freed.
void cs_scheme_free(struct CsScheme *s);

// # Safety
// `s` must be null or a string from this library not yet freed.
void cs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMPLEX_SCHEMES_H */
