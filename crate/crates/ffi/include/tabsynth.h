#ifndef TABSYNTH_H
#define TABSYNTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_ARGUMENT = 1,
  TS_STATUS_INVALID_UTF8 = 2,
  TS_STATUS_PARSE_ERROR = 3,
  TS_STATUS_BUDGET_EXCEEDED = 4,
  TS_STATUS_NOT_REALIZABLE = 5,
  TS_STATUS_INTERNAL = 6,
} TsStatus;

typedef enum TsVerdict {
  TS_VERDICT_REALIZABLE = 0,
  TS_VERDICT_UNREALIZABLE = 1,
  TS_VERDICT_UNKNOWN = 2,
} TsVerdict;

/**
 * Parsed specification.
 */
typedef struct TsSpec TsSpec;

/**
 * Engine limits and switches. Obtain defaults with `ts_config_default`.
 */
typedef struct TsConfig {
  size_t max_nodes;
  size_t max_coverings;
  uint64_t max_env_space;
  /**
   * Explore coverings in enumeration order instead of weakest-first.
   */
  bool declared_order;
  bool prune_siblings;
  /**
   * Disable subsumption-based simplification of normal forms.
   */
  bool no_simplify;
  uint64_t oracle_budget;
  bool oracle_lazy;
} TsConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Fills `out` with the default configuration.
 *
 * # Safety
 * `out` must be null or point to writable memory for one `TsConfig`.
 */
void ts_config_default(struct TsConfig *out);

/**
 * Parses a NUL-terminated specification text into a new handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum TsStatus ts_spec_parse(const char *text, struct TsSpec **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `spec` must be null or a handle from `ts_spec_parse` not yet freed.
 */
void ts_spec_free(struct TsSpec *spec);

/**
 * Decides realizability with the tableau. A null `cfg` means defaults.
 * Budget exhaustion is not an error: it yields `TS_VERDICT_UNKNOWN`.
 *
 * # Safety
 * `spec` must be a live handle, `cfg` null or valid, `out` writable.
 */
enum TsStatus ts_check(const struct TsSpec *spec, const struct TsConfig *cfg, enum TsVerdict *out);

/**
 * Decides realizability with the explicit safety game.
 *
 * # Safety
 * As for `ts_check`.
 */
enum TsStatus ts_oracle(const struct TsSpec *spec, const struct TsConfig *cfg, enum TsVerdict *out);

/**
 * Synthesizes a strategy and returns it as JSON in `*out_json`.
 * Fails with `TS_STATUS_NOT_REALIZABLE` or `TS_STATUS_BUDGET_EXCEEDED`
 * when no strategy is produced.
 *
 * # Safety
 * As for `ts_check`; `out_json` must be writable.
 */
enum TsStatus ts_synth_json(const struct TsSpec *spec, const struct TsConfig *cfg, char **out_json);

/**
 * Terse normal form of the safety body, one move per line.
 *
 * # Safety
 * `spec` must be a live handle; `out_text` must be writable.
 */
enum TsStatus ts_tnf(const struct TsSpec *spec, char **out_text);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ts_string_free(char *s);

/**
 * Message for the last failing call on this thread, or an empty string.
 * The pointer stays valid until the next library call on the same thread.
 */
const char *ts_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TABSYNTH_H */
