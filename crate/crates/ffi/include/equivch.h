#ifndef EQUIVCH_H
#define EQUIVCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum EquivchStatus {
  EQUIVCH_STATUS_OK = 0,
  EQUIVCH_STATUS_NULL_POINTER = 1,
  EQUIVCH_STATUS_INVALID_INPUT = 2,
  EQUIVCH_STATUS_DEGENERATE = 3,
  EQUIVCH_STATUS_MISMATCH = 4,
  EQUIVCH_STATUS_PANIC = 5,
} EquivchStatus;

// A homology table over a closed degree window.
typedef struct EquivchHomology EquivchHomology;

// A validated piecewise-linear profile.
typedef struct EquivchProfile EquivchProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *equivch_last_error(void);

// Library version as a static string.
const char *equivch_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a pointer previously returned through a `char **` out
// parameter of this library, not yet freed.
void equivch_string_free(char *s);

// Parses a profile document `{"corners": [["u", "y"], ...], "plateau": "y"}`.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be valid for writes.
enum EquivchStatus equivch_profile_from_json(const char *json, struct EquivchProfile **out);

// Builds the three-piece standard profile on `B(radius)`.
//
// # Safety
// The string arguments must be valid NUL-terminated strings; `out` must be valid for writes.
enum EquivchStatus equivch_profile_standard(const char *radius,
                                            const char *delta,
                                            const char *c,
                                            struct EquivchProfile **out);

// Serializes a profile to its JSON document.
//
// # Safety
// `profile` must be a live handle; `out` must be valid for writes.
enum EquivchStatus equivch_profile_to_json(const struct EquivchProfile *profile, char **out);

// Releases a profile handle. Null is ignored.
//
// # Safety
// `profile` must be null or a handle from this library, not yet freed.
void equivch_profile_free(struct EquivchProfile *profile);

// Orbit families on `B(radius)` as a JSON array. `epsilon` may be null for no window.
//
// # Safety
// `profile` must be a live handle; `radius` a valid string; `epsilon` null or
// a valid string; `out` valid for writes.
enum EquivchStatus equivch_orbits_json(const struct EquivchProfile *profile,
                                       const char *radius,
                                       const char *epsilon,
                                       char **out);

// Runs the pipeline on `profile` and computes homology over `[lo, hi]`. If
// `lo > hi` the default window for `n` and `radius` is used.
//
// # Safety
// `profile` must be a live handle; `radius` and `epsilon` valid strings;
// `out` valid for writes.
enum EquivchStatus equivch_homology_compute(const struct EquivchProfile *profile,
                                            uint32_t n,
                                            uint32_t k,
                                            const char *radius,
                                            const char *epsilon,
                                            int64_t lo,
                                            int64_t hi,
                                            bool equivariant,
                                            struct EquivchHomology **out);

// Dimension over `Z_k` in `degree`; zero outside the window.
//
// # Safety
// `h` must be a live handle; `out` valid for writes.
enum EquivchStatus equivch_homology_dim(const struct EquivchHomology *h,
                                        int64_t degree,
                                        size_t *out);

// The degree window of a homology table.
//
// # Safety
// `h` must be a live handle; `lo` and `hi` valid for writes.
enum EquivchStatus equivch_homology_window(const struct EquivchHomology *h,
                                           int64_t *lo,
                                           int64_t *hi);

// Releases a homology handle. Null is ignored.
//
// # Safety
// `h` must be null or a handle from this library, not yet freed.
void equivch_homology_free(struct EquivchHomology *h);

// The unique degree `-n - 2n[1/R]` carrying non-equivariant homology.
//
// # Safety
// `radius` must be a valid string; `out` valid for writes.
enum EquivchStatus equivch_predicted_degree(uint32_t n, const char *radius, int64_t *out);

// Non-squeezing certificate as JSON. `k = 0` searches for the prime.
//
// # Safety
// `r1` and `r2` must be valid strings; `out` valid for writes.
enum EquivchStatus equivch_certify_json(uint32_t n,
                                        const char *r1,
                                        const char *r2,
                                        uint32_t k,
                                        char **out);

// Squeezing-room report as JSON.
//
// # Safety
// `out` must be valid for writes.
enum EquivchStatus equivch_room_json(uint64_t m, uint64_t kappa, uint64_t b, char **out);

// Checks a ladder document. Writes the verdict as JSON and returns
// `EQUIVCH_STATUS_MISMATCH` for a non-commuting ladder or a counterexample.
//
// # Safety
// `json` must be a valid string; `out` valid for writes.
enum EquivchStatus equivch_ladder_check_json(const char *json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQUIVCH_H */
