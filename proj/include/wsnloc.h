/* C API for the wsnloc node-localization simulator.
 *
 * All simulation state lives behind the opaque wsnloc_sim handle. Every
 * function returns a status code; on failure wsnloc_last_error() holds a
 * thread-local human-readable message. Strings returned through out
 * parameters are owned by the caller and must be released with
 * wsnloc_string_free().
 *
 * Typical usage:
 *   wsnloc_sim* sim = NULL;
 *   wsnloc_sim_create("{\"scenario\":\"s1\",\"master_seed\":42}", &sim);
 *   wsnloc_sim_run(sim);
 *   char* csv = NULL;
 *   wsnloc_sim_runs_csv(sim, &csv);
 *   ...
 *   wsnloc_string_free(csv);
 *   wsnloc_sim_destroy(sim);
 */
#ifndef WSNLOC_H
#define WSNLOC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define WSNLOC_API __declspec(dllexport)
#else
#define WSNLOC_API __attribute__((visibility("default")))
#endif

typedef enum wsnloc_status {
    WSNLOC_OK = 0,
    WSNLOC_ERR_INVALID_ARGUMENT = 1,
    WSNLOC_ERR_INVALID_CONFIG = 2,
    WSNLOC_ERR_UNLOCALIZABLE = 3,
    WSNLOC_ERR_NOT_NEIGHBORS = 4,
    WSNLOC_ERR_INSUFFICIENT_ANCHORS = 5,
    WSNLOC_ERR_EMPTY_NEIGHBORHOOD = 6,
    WSNLOC_ERR_NO_ESTIMATES = 7,
    WSNLOC_ERR_PARSE = 8,
    WSNLOC_ERR_IO = 9,
    WSNLOC_ERR_NOT_RUN = 10,
    WSNLOC_ERR_INTERNAL = 11
} wsnloc_status;

typedef struct wsnloc_sim wsnloc_sim;

WSNLOC_API const char* wsnloc_version(void);
WSNLOC_API const char* wsnloc_status_name(wsnloc_status status);

/* Thread-local message for the most recent failure on this thread. */
WSNLOC_API const char* wsnloc_last_error(void);

WSNLOC_API void wsnloc_string_free(char* s);

/* Creates a simulation from a config JSON document. The config names a
 * scenario preset (s1..s4) or explicit fields, the method list, the master
 * seed and optimizer parameter overrides; unknown keys are rejected. */
WSNLOC_API wsnloc_status wsnloc_sim_create(const char* config_json,
                                           wsnloc_sim** out_sim);
WSNLOC_API void wsnloc_sim_destroy(wsnloc_sim* sim);

/* Pins every run to one deployment (replay mode) instead of redeploying
 * per run. Must be called before wsnloc_sim_run. */
WSNLOC_API wsnloc_status wsnloc_sim_load_deployment(wsnloc_sim* sim,
                                                    const char* deployment_json);

/* Executes all runs of the configured scenario. Deterministic for a fixed
 * config; runs may execute on multiple threads. */
WSNLOC_API wsnloc_status wsnloc_sim_run(wsnloc_sim* sim);

/* The fully resolved config (valid before run). */
WSNLOC_API wsnloc_status wsnloc_sim_resolved_config_json(const wsnloc_sim* sim,
                                                         char** out);

/* Report artifacts; all require a completed wsnloc_sim_run. */
WSNLOC_API wsnloc_status wsnloc_sim_runs_csv(const wsnloc_sim* sim, char** out);
WSNLOC_API wsnloc_status wsnloc_sim_convergence_csv(const wsnloc_sim* sim,
                                                    char** out);
WSNLOC_API wsnloc_status wsnloc_sim_summary_json(const wsnloc_sim* sim,
                                                 char** out);
WSNLOC_API wsnloc_status wsnloc_sim_summary_text(const wsnloc_sim* sim,
                                                 char** out);
/* Per-node estimates of run 0, one block per method. */
WSNLOC_API wsnloc_status wsnloc_sim_nodes_csv(const wsnloc_sim* sim, char** out);

/* Deployment used by a given run, as replayable JSON. */
WSNLOC_API wsnloc_status wsnloc_sim_deployment_json(const wsnloc_sim* sim,
                                                    int run_index, char** out);

/* FNV-1a 64, the hash used in run manifests. */
WSNLOC_API uint64_t wsnloc_hash_bytes(const void* data, size_t len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WSNLOC_H */
