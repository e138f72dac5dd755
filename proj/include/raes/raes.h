/* C interface to the raes simulation library. */
#ifndef RAES_RAES_H
#define RAES_RAES_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum raes_status {
    RAES_OK = 0,
    RAES_ERR_INVALID_ARGUMENT = 1,
    RAES_ERR_DOMAIN = 2,
    RAES_ERR_REJECTED_CUT = 3,
    RAES_ERR_NUMERIC = 4,
    RAES_ERR_CONFIG = 5,
    RAES_ERR_IO = 6,
    RAES_ERR_PARSE = 7,
    RAES_ERR_INVARIANT = 8,
    RAES_ERR_INTERNAL = 99
} raes_status;

typedef struct raes_config raes_config;
typedef struct raes_results raes_results;

/* Message for the last failure on this thread; "" if none. */
const char* raes_last_error(void);
const char* raes_version(void);

raes_status raes_config_create(raes_config** out);
raes_status raes_config_from_json(const char* json, raes_config** out);
/* key uses the JSON field names (algo, d, t_horizon, t0, ...). */
raes_status raes_config_set(raes_config* cfg, const char* key, const char* value);
raes_status raes_config_validate(const raes_config* cfg);
/* Writes a NUL-terminated string if it fits in cap; *needed gets the full
   length including the terminator either way. */
raes_status raes_config_to_json(const raes_config* cfg, char* buf, size_t cap, size_t* needed);
raes_status raes_config_get(const raes_config* cfg, const char* key, char* buf, size_t cap,
                            size_t* needed);
void raes_config_destroy(raes_config* cfg);

raes_status raes_run(const raes_config* cfg, raes_results** out);
raes_status raes_sweep(const raes_config* base, const char* const* algos, size_t n_algos,
                       const double* gammas, size_t n_gammas, const char* const* v0_specs,
                       size_t n_v0_specs, raes_results** out);

raes_status raes_results_read_csv(const char* path, raes_results** out);
size_t raes_results_count(const raes_results* res);
/* *algo stays valid until the results handle is destroyed. */
raes_status raes_results_trace_info(const raes_results* res, size_t index, const char** algo,
                                    long* seed, size_t* length);
raes_status raes_results_cumulative(const raes_results* res, size_t index, double* out,
                                    size_t cap);
raes_status raes_results_write_csv(const raes_results* res, const char* path);
/* One averaged cumulative-regret line per trace label. title may be NULL. */
raes_status raes_results_render_svg(const raes_results* res, const char* path, const char* title);

typedef void (*raes_record_fn)(void* user, const char* algo, long seed, double final_regret,
                               double wall_seconds, uint64_t config_hash);
/* Per-run records (empty for results loaded from CSV). */
raes_status raes_results_records(const raes_results* res, raes_record_fn fn, void* user);
void raes_results_destroy(raes_results* res);

typedef void (*raes_line_fn)(void* user, const char* line);
raes_status raes_selftest(raes_line_fn fn, void* user, int* passed);

raes_status raes_volume_ratio(double alpha, int d, double* out);

#ifdef __cplusplus
}
#endif

#endif
