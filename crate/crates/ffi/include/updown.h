#ifndef UPDOWN_H
#define UPDOWN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum UdStatus {
  UD_STATUS_OK = 0,
  UD_STATUS_NULL_POINTER = 1,
  UD_STATUS_INVALID_UTF8 = 2,
  UD_STATUS_PARSE_ERROR = 3,
  UD_STATUS_DOMAIN_ERROR = 4,
  UD_STATUS_PANIC = 5,
} UdStatus;

// Opaque handle to a cocycle table.
typedef struct UdCocycle UdCocycle;

// Opaque handle to a validated diagram.
typedef struct UdDiagram UdDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or "" after a success.
// The pointer stays valid until the next call on the same thread.
const char *ud_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void ud_string_free(char *s);

// Parses a signed Gauss code such as `"O1+ O2+ ; U1+ U2+"`.
//
// # Safety
// `code` must be a NUL-terminated string; `out` must be writable.
enum UdStatus ud_diagram_parse(const char *code, struct UdDiagram **out);

// # Safety
// `d` must be null or a handle from this library, not yet freed.
void ud_diagram_free(struct UdDiagram *d);

// Canonical Gauss code text; free with [`ud_string_free`].
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum UdStatus ud_diagram_serialize(const struct UdDiagram *d, char **out);

// # Safety
// `d` must be a live handle; `out` must be writable.
enum UdStatus ud_diagram_component_count(const struct UdDiagram *d, size_t *out);

// # Safety
// `d` must be a live handle; `out` must be writable.
enum UdStatus ud_maxord(const struct UdDiagram *d, uint64_t *out);

// Number of `(n; positive, negative)` colorings. Fails if it exceeds 2^64 - 1.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum UdStatus ud_count_colorings(const struct UdDiagram *d,
                                 uint32_t n,
                                 int64_t positive,
                                 int64_t negative,
                                 uint64_t *out);

// Connected sum of two knot diagrams, cut open at the given semi-arcs.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum UdStatus ud_connected_sum(const struct UdDiagram *a,
                               size_t a_position,
                               const struct UdDiagram *b,
                               size_t b_position,
                               struct UdDiagram **out);

// Looks up `example-f`, `example-g` or `zero(n,m)`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum UdStatus ud_cocycle_builtin(const char *name, struct UdCocycle **out);

// Parses the cocycle file format (`n=<n> m=<m>` then `<a> <b> <+|-> <value>` lines).
//
// # Safety
// `contents` must be a NUL-terminated string; `out` must be writable.
enum UdStatus ud_cocycle_parse(const char *contents, struct UdCocycle **out);

// # Safety
// `f` must be null or a handle from this library, not yet freed.
void ud_cocycle_free(struct UdCocycle *f);

// Writes -1 to `condition` if the table satisfies every cocycle condition,
// otherwise the number of the first failing condition. On failure a
// non-null `witness` receives text such as `"a=0,b=1,c=2"`.
//
// # Safety
// `f` must be a live handle; `condition` must be writable; `witness` may be null.
enum UdStatus ud_cocycle_check(const struct UdCocycle *f, int32_t *condition, char **witness);

// # Safety
// `f` must be a live handle; `out` must be writable.
enum UdStatus ud_cocycle_is_shiftable(const struct UdCocycle *f, bool *out);

// Shift invariant of a knot diagram for a shiftable cocycle.
//
// # Safety
// `d` and `f` must be live handles; `out` must be writable.
enum UdStatus ud_phi_shift(const struct UdDiagram *d, const struct UdCocycle *f, uint32_t *out);

// Multiset of weight sums of a knot diagram, as text `"{v1,v2,...}"`.
//
// # Safety
// `d` and `f` must be live handles; `out` must be writable.
enum UdStatus ud_phi_multiset(const struct UdDiagram *d, const struct UdCocycle *f, char **out);

// Best RII lower bound between two diagrams. `f` may be null. `report`
// (if non-null) receives the `bound=.. certificate=.. detail=..` line.
//
// # Safety
// `a` and `b` must be live handles; `f` null or live; `bound` writable.
enum UdStatus ud_compare(const struct UdDiagram *a,
                         const struct UdDiagram *b,
                         const struct UdCocycle *f,
                         uint64_t *bound,
                         char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UPDOWN_H */
