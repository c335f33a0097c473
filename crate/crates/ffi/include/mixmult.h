#ifndef MIXMULT_H
#define MIXMULT_H

/* Generated from the Rust sources by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes mirrored in the generated header. They match the process
// exit codes of the command line tool where the two overlap.
typedef enum MmStatus {
  // Success; for verification this means the identity was verified.
  MM_OK = 0,
  // Verification ran to completion and the identity failed.
  MM_VIOLATED = 1,
  // Bad input: null pointer, malformed JSON, or an invalid request.
  MM_INVALID = 2,
  // A hypothesis could not be established or a fit did not stabilize.
  MM_INCONCLUSIVE = 3,
  // An internal panic was caught; the handle remains usable.
  MM_PANIC = 4,
} MmStatus;

// Opaque parsed instance.
typedef struct MmInstance MmInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the engine as a static string; never freed by the caller.
const char *mm_version(void);

// Last error message for this thread, or null when the previous call
// succeeded. Valid until the next API call on the same thread.
const char *mm_last_error(void);

// Parse an instance document; on success stores a new handle in `out`.
//
// # Safety
// `json` must be a valid nul-terminated string and `out` a valid pointer.
enum MmStatus mm_instance_parse_json(const char *json, struct MmInstance **out);

// Release a handle created by `mm_instance_parse_json`.
//
// # Safety
// `instance` must be a handle from this library or null.
void mm_instance_free(struct MmInstance *instance);

// Release a string returned by any `_json` entry point.
//
// # Safety
// `text` must be a string from this library or null.
void mm_string_free(char *text);

// Interpolate the stable polynomial and return the mixed values as JSON.
//
// # Safety
// `instance` must be a live handle and `out_json` a valid pointer.
enum MmStatus mm_compute_json(const struct MmInstance *instance, char **out_json);

// Dimension and support data as JSON.
//
// # Safety
// `instance` must be a live handle and `out_json` a valid pointer.
enum MmStatus mm_primes_json(const struct MmInstance *instance, char **out_json);

// Verify one identity. `params_json` may be null to use the request
// embedded in the instance. The full report is returned as JSON and the
// status encodes the verdict.
//
// # Safety
// Pointers must be valid as for the other entry points.
enum MmStatus mm_verify_json(const struct MmInstance *instance,
                             const char *params_json,
                             char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXMULT_H */
