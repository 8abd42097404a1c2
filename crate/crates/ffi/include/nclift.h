/* C interface of the nclift scenario runner. */

#ifndef NCLIFT_H
#define NCLIFT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes of every FFI entry point. The numeric values of the first
 * four match the CLI exit convention.
 */
typedef enum NcliftStatus {
  /**
   * Success.
   */
  NCLIFT_STATUS_OK = 0,
  /**
   * Mathematical negative, honestly reported (report still produced).
   */
  NCLIFT_STATUS_NEGATIVE = 2,
  /**
   * A cap was hit; the outcome is inconclusive (report still produced).
   */
  NCLIFT_STATUS_INCONCLUSIVE = 3,
  /**
   * Malformed input or schema violation.
   */
  NCLIFT_STATUS_INPUT_ERROR = 4,
  /**
   * A required pointer argument was null.
   */
  NCLIFT_STATUS_NULL_ARGUMENT = 5,
  /**
   * A string argument was not valid UTF-8.
   */
  NCLIFT_STATUS_INVALID_UTF8 = 6,
  /**
   * An internal invariant failed; the library caught a panic.
   */
  NCLIFT_STATUS_PANIC = 7,
} NcliftStatus;

/**
 * Opaque report produced by a run.
 */
typedef struct NcliftReport NcliftReport;

/**
 * Opaque parsed scenario.
 */
typedef struct NcliftScenario NcliftScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a scenario from JSON.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be a valid
 * pointer. On `Ok` the caller owns the handle and must release it with
 * [`nclift_scenario_free`].
 */
enum NcliftStatus nclift_scenario_parse(const char *json, struct NcliftScenario **out);

/**
 * Releases a scenario handle. Null is allowed.
 *
 * # Safety
 * `handle` must have been returned by [`nclift_scenario_parse`] and not
 * freed before.
 */
void nclift_scenario_free(struct NcliftScenario *handle);

/**
 * Runs a parsed scenario. The returned status mirrors the report outcome
 * (Ok / Negative / Inconclusive); a report handle is produced in all
 * three cases.
 *
 * # Safety
 * `scenario` must be a live handle from [`nclift_scenario_parse`]; `out`
 * must be a valid pointer. On success the caller owns the report handle.
 */
enum NcliftStatus nclift_scenario_run(const struct NcliftScenario *scenario,
                                      struct NcliftReport **out);

/**
 * Releases a report handle. Null is allowed.
 *
 * # Safety
 * `handle` must have been returned by [`nclift_scenario_run`] and not
 * freed before.
 */
void nclift_report_free(struct NcliftReport *handle);

/**
 * Status carried by a report.
 *
 * # Safety
 * `report` must be a live handle.
 */
enum NcliftStatus nclift_report_status(const struct NcliftReport *report);

/**
 * Serializes a report to JSON. Returns NULL on allocation failure; the
 * caller frees the string with [`nclift_string_free`].
 *
 * # Safety
 * `report` must be a live handle.
 */
char *nclift_report_to_json(const struct NcliftReport *report);

/**
 * One-shot convenience: parse, run, and serialize the report. On any
 * status except InputError/NullArgument/InvalidUtf8/Panic a report JSON
 * string is written to `out_report_json` (caller frees).
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out_report_json` must be
 * a valid pointer.
 */
enum NcliftStatus nclift_run_scenario_json(const char *json, char **out_report_json);

/**
 * Re-checks every certificate of a report against its scenario. Returns
 * Ok when the report verifies, Negative when a certificate fails (the
 * failures are written to `out_failures` as one line each, caller frees).
 *
 * # Safety
 * `report_json` and `scenario_json` must be valid NUL-terminated strings;
 * `out_failures` may be null when the failure list is not wanted.
 */
enum NcliftStatus nclift_verify_report_json(const char *report_json,
                                            const char *scenario_json,
                                            char **out_failures);

/**
 * Releases a string produced by this library. Null is allowed.
 *
 * # Safety
 * `s` must have been returned by one of the string-producing entry points
 * and not freed before.
 */
void nclift_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCLIFT_H */
