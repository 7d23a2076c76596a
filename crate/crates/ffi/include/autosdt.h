#ifndef AUTOSDT_H
#define AUTOSDT_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. The first values line up with the CLI exit codes.
 */
typedef enum AutosdtStatus {
  AUTOSDT_STATUS_OK = 0,
  AUTOSDT_STATUS_ERROR = 1,
  AUTOSDT_STATUS_CONFIG = 2,
  AUTOSDT_STATUS_PROVIDER = 3,
  AUTOSDT_STATUS_INTERRUPTED = 4,
  AUTOSDT_STATUS_INVALID_ARGUMENT = 5,
  AUTOSDT_STATUS_MALFORMED_REPLY = 6,
  AUTOSDT_STATUS_PANIC = 7,
} AutosdtStatus;

/**
 * Stage selector for [`autosdt_pipeline_run`].
 */
typedef enum AutosdtStage {
  AUTOSDT_STAGE_SEARCH = 0,
  AUTOSDT_STAGE_SELECT = 1,
  AUTOSDT_STAGE_ADAPT = 2,
  AUTOSDT_STAGE_ALL = 3,
  AUTOSDT_STAGE_STATS = 4,
} AutosdtStage;

/**
 * Loaded pipeline configuration.
 */
typedef struct AutosdtConfig AutosdtConfig;

/**
 * A pipeline bound to one run's state and output directory.
 */
typedef struct AutosdtPipeline AutosdtPipeline;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next autosdt call on the same thread.
 */
const char *autosdt_last_error(void);

/**
 * Library version as a static string.
 */
const char *autosdt_version(void);

/**
 * Frees a string returned through an output parameter. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be freed twice.
 */
void autosdt_string_free(char *s);

/**
 * Loads a TOML configuration file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum AutosdtStatus autosdt_config_load(const char *path, struct AutosdtConfig **out);

/**
 * # Safety
 * `config` must come from [`autosdt_config_load`] or be NULL.
 */
void autosdt_config_free(struct AutosdtConfig *config);

/**
 * Sets the model mode: `live`, `record` or `replay`.
 *
 * # Safety
 * `config` must be a live handle and `mode` a NUL-terminated string.
 */
enum AutosdtStatus autosdt_config_set_mode(struct AutosdtConfig *config, const char *mode);

/**
 * Redirects outputs (and, unless configured separately, run state).
 *
 * # Safety
 * `config` must be a live handle and `dir` a NUL-terminated string.
 */
enum AutosdtStatus autosdt_config_set_out_dir(struct AutosdtConfig *config, const char *dir);

/**
 * Hex digest identifying the run-relevant settings.
 *
 * # Safety
 * `config` must be a live handle; `out` must be writable.
 */
enum AutosdtStatus autosdt_config_hash(const struct AutosdtConfig *config, char **out);

/**
 * Opens (or resumes) the run described by `config`. The config handle is
 * only read and may be freed afterwards.
 *
 * # Safety
 * `config` must be a live handle; `out` must be writable.
 */
enum AutosdtStatus autosdt_pipeline_open(const struct AutosdtConfig *config,
                                         struct AutosdtPipeline **out);

/**
 * Runs one stage. On success `summary_json`, when not NULL, receives the
 * stage summary as JSON.
 *
 * # Safety
 * `pipeline` must be a live handle; `summary_json` must be NULL or writable.
 */
enum AutosdtStatus autosdt_pipeline_run(const struct AutosdtPipeline *pipeline,
                                        enum AutosdtStage stage,
                                        char **summary_json);

/**
 * Asks a running stage to stop after in-flight items commit. Safe to call
 * from another thread while [`autosdt_pipeline_run`] is executing.
 *
 * # Safety
 * `pipeline` must be a live handle or NULL.
 */
void autosdt_pipeline_interrupt(const struct AutosdtPipeline *pipeline);

/**
 * # Safety
 * `pipeline` must come from [`autosdt_pipeline_open`] or be NULL, and no
 * other thread may be using it.
 */
void autosdt_pipeline_free(struct AutosdtPipeline *pipeline);

/**
 * Corpus statistics for a tasks file, as JSON.
 *
 * # Safety
 * `tasks_path` must be a NUL-terminated string; `out` must be writable.
 */
enum AutosdtStatus autosdt_corpus_stats(const char *tasks_path, char **out);

/**
 * Third-party requirements of a Python program as `{"requirements":[..],"env_id":".."}`.
 *
 * # Safety
 * `code` must be a NUL-terminated string; `repo_paths` must point to
 * `n_paths` NUL-terminated strings (or be NULL when `n_paths` is 0).
 */
enum AutosdtStatus autosdt_infer_requirements(const char *code,
                                              const char *const *repo_paths,
                                              size_t n_paths,
                                              char **out);

/**
 * Reads a `<field>: YES|NO` verdict; `out` is set to true for YES.
 *
 * # Safety
 * `reply` and `field` must be NUL-terminated strings; `out` must be writable.
 */
enum AutosdtStatus autosdt_parse_yes_no(const char *reply, const char *field, bool *out);

/**
 * Reads a path list after `<field>:` and returns it as a JSON array.
 *
 * # Safety
 * `reply` and `field` must be NUL-terminated strings; `out` must be writable.
 */
enum AutosdtStatus autosdt_parse_path_list(const char *reply, const char *field, char **out);

/**
 * Pulls the program out of the last Python code block of a reply.
 *
 * # Safety
 * `reply` must be a NUL-terminated string; `out` must be writable.
 */
enum AutosdtStatus autosdt_extract_code_block(const char *reply, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AUTOSDT_H */
