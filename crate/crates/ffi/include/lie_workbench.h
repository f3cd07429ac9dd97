#ifndef LIE_WORKBENCH_H
#define LIE_WORKBENCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WbStatus {
  WB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  WB_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  WB_STATUS_INVALID_UTF8 = 2,
  /**
   * Syntax or load error in a definition file.
   */
  WB_STATUS_PARSE = 3,
  /**
   * Unknown name, mismatched operands, bad option.
   */
  WB_STATUS_USAGE = 4,
  /**
   * The operation does not apply to this input.
   */
  WB_STATUS_UNSUPPORTED = 5,
  /**
   * A panic was caught at the boundary.
   */
  WB_STATUS_INTERNAL = 6,
} WbStatus;

/**
 * A Lie superalgebra.
 */
typedef struct WbAlgebra WbAlgebra;

/**
 * Report of a definition-file run.
 */
typedef struct WbReport WbReport;

/**
 * A tensor over an algebra's basis, together with the name of its host.
 */
typedef struct WbTensor WbTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *wb_last_error(void);

/**
 * Library version as a static string.
 */
const char *wb_version(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from a `wb_*` function returning `char *` and not be freed
 * twice.
 */
void wb_string_free(char *s);

/**
 * Looks up a catalog algebra such as `sl3` or `osp12`.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum WbStatus wb_algebra_from_catalog(const char *name, struct WbAlgebra **out);

/**
 * # Safety
 * `a` must be null or a handle from `wb_algebra_from_catalog`.
 */
void wb_algebra_free(struct WbAlgebra *a);

/**
 * Dimension of the algebra, 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
uintptr_t wb_algebra_dim(const struct WbAlgebra *a);

/**
 * Writes whether the graded Jacobi identity holds identically.
 *
 * # Safety
 * `a` must be a live handle; `passed` must be writable.
 */
enum WbStatus wb_algebra_jacobi(const struct WbAlgebra *a, bool *passed);

/**
 * Looks up a catalog tensor. `host` may be null for the default algebra.
 *
 * # Safety
 * `name` must be a nul-terminated string, `host` null or one; `out` must
 * be writable.
 */
enum WbStatus wb_tensor_from_catalog(const char *name, const char *host, struct WbTensor **out);

/**
 * # Safety
 * `t` must be null or a handle from `wb_tensor_from_catalog`.
 */
void wb_tensor_free(struct WbTensor *t);

/**
 * Renders the tensor in definition-file syntax. Free with `wb_string_free`.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
char *wb_tensor_render(const struct WbTensor *t);

/**
 * Name of the algebra the tensor was built over. Free with `wb_string_free`.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
char *wb_tensor_host(const struct WbTensor *t);

/**
 * Writes whether the Schouten bracket `[[r, r]]` vanishes over `a`.
 *
 * # Safety
 * `a`, `r` must be live handles; `passed` must be writable.
 */
enum WbStatus wb_check_cybe(const struct WbAlgebra *a, const struct WbTensor *r, bool *passed);

/**
 * Parses, loads and runs a definition file with twist order `order`.
 * Failing checks still give `WB_STATUS_OK`; inspect the report.
 *
 * # Safety
 * `source` must be a nul-terminated string; `out` must be writable.
 */
enum WbStatus wb_run(const char *source, uint32_t order, struct WbReport **out);

/**
 * # Safety
 * `r` must be null or a handle from `wb_run`.
 */
void wb_report_free(struct WbReport *r);

/**
 * 0 when every check passed, 1 otherwise, 2 for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
int32_t wb_report_exit_code(const struct WbReport *r);

/**
 * Number of checks in the report.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
uintptr_t wb_report_len(const struct WbReport *r);

/**
 * Text rendering, or the structured (JSON) tree when `structured` is set.
 * Free with `wb_string_free`.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
char *wb_report_render(const struct WbReport *r, bool structured);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIE_WORKBENCH_H */
