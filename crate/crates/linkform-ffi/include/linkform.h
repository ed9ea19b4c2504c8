#ifndef LINKFORM_H
#define LINKFORM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LfStatus {
  LF_STATUS_OK = 0,
  LF_STATUS_NULL = 1,
  LF_STATUS_PARSE = 2,
  LF_STATUS_MATH = 3,
  LF_STATUS_IDENTITY = 4,
  LF_STATUS_PANIC = 5,
} LfStatus;

/**
 * A parsed input document together with its session field.
 */
typedef struct LfDocument LfDocument;

/**
 * An owned NUL-terminated UTF-8 string.
 */
typedef struct LfString LfString;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON document. `field_sqrt` of 0 means no square root is adjoined
 * beyond what the document requests.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be writable.
 * `error` may be null.
 */
enum LfStatus lf_document_parse(const char *json,
                                uint32_t field_sqrt,
                                struct LfDocument **out,
                                struct LfString **error);

/**
 * # Safety
 * `doc` must come from [`lf_document_parse`] and not be freed twice. Null is ignored.
 */
void lf_document_free(struct LfDocument *doc);

/**
 * Classifies the document and returns the structured form as JSON.
 *
 * # Safety
 * `doc` must be a live document handle; `out` must be writable.
 */
enum LfStatus lf_classify(const struct LfDocument *doc, struct LfString **out);

/**
 * Sum of all signature jumps of the classified form.
 *
 * # Safety
 * `doc` must be a live document handle; `out` must be writable.
 */
enum LfStatus lf_total_jump(const struct LfDocument *doc, int64_t *out);

/**
 * Writes 1 to `out` if the form is represented by some Hermitian matrix, else 0.
 *
 * # Safety
 * `doc` must be a live document handle; `out` must be writable.
 */
enum LfStatus lf_is_representable(const struct LfDocument *doc, int32_t *out);

/**
 * Runs a command-line verb (for example "classify" or "verify") on a JSON
 * document and returns its JSON output. `csv` selects CSV output for "sigfn".
 * A failed verification yields `Identity` with the report in `out`.
 *
 * # Safety
 * `verb` and `json` must be valid NUL-terminated strings; `out` must be writable.
 */
enum LfStatus lf_run(const char *verb,
                     const char *json,
                     uint32_t field_sqrt,
                     bool csv,
                     struct LfString **out);

/**
 * Borrowed pointer to the string contents, valid until the string is freed.
 *
 * # Safety
 * `s` must be a live string handle or null.
 */
const char *lf_string_ptr(const struct LfString *s);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void lf_string_free(struct LfString *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINKFORM_H */
