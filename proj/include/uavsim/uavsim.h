/*
 * uavsim C API.
 *
 * Every function returns a uavsim_status. On failure a description of the
 * most recent error on the calling thread is available from
 * uavsim_last_error(). Handles are opaque and must be released with the
 * matching *_destroy function; destroying NULL is a no-op.
 */
#ifndef UAVSIM_H
#define UAVSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(UAVSIM_BUILDING_LIBRARY)
#    define UAVSIM_API __declspec(dllexport)
#  else
#    define UAVSIM_API __declspec(dllimport)
#  endif
#else
#  define UAVSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uavsim_status {
    UAVSIM_OK = 0,
    UAVSIM_ERR_INVALID_ARGUMENT = 1,
    UAVSIM_ERR_CONTRACT = 2,
    UAVSIM_ERR_INTEGRATION = 3,
    UAVSIM_ERR_CONFIG = 4,
    UAVSIM_ERR_IO = 5,
    UAVSIM_ERR_INTERNAL = 6
} uavsim_status;

/* Episode status codes reported in uavsim_step_result.status. */
enum {
    UAVSIM_EPISODE_RUNNING = 0,
    UAVSIM_EPISODE_SUCCESS = 1,
    UAVSIM_EPISODE_OUT_OF_BOUNDS = 2,
    UAVSIM_EPISODE_OVERSPIN = 3,
    UAVSIM_EPISODE_INTERCEPTED = 4,
    UAVSIM_EPISODE_MAX_STEPS = 5
};

enum { UAVSIM_POLICY_HOVER = 0, UAVSIM_POLICY_GOTO = 1, UAVSIM_POLICY_RANDOM = 2 };

enum { UAVSIM_OBSERVATION_SIZE = 13, UAVSIM_ACTION_SIZE = 2, UAVSIM_MAX_AGENTS = 2 };

typedef struct uavsim_config uavsim_config;
typedef struct uavsim_env uavsim_env;
typedef struct uavsim_server uavsim_server;

UAVSIM_API const char* uavsim_version(void);
UAVSIM_API const char* uavsim_last_error(void);
UAVSIM_API const char* uavsim_status_name(uavsim_status status);
UAVSIM_API const char* uavsim_episode_status_name(int episode_status);

/* ---- configuration ---------------------------------------------------- */

UAVSIM_API uavsim_status uavsim_config_create(uavsim_config** out);
UAVSIM_API uavsim_status uavsim_config_load(const char* path, uavsim_config** out);
UAVSIM_API uavsim_status uavsim_config_set(uavsim_config* cfg, const char* key, const char* value);
/* Writes the full "key = value" listing. `needed` receives the size including
 * the terminating NUL; pass buf = NULL to query it. */
UAVSIM_API uavsim_status uavsim_config_dump(const uavsim_config* cfg, char* buf, size_t capacity, size_t* needed);
UAVSIM_API uavsim_status uavsim_config_limits(const uavsim_config* cfg, double* v_max, double* a_max);
UAVSIM_API void uavsim_config_destroy(uavsim_config* cfg);

/* ---- minimum-time solver ---------------------------------------------- */

typedef struct uavsim_boundary {
    double start_x, start_y, start_vx, start_vy;
    double end_x, end_y, end_vx, end_vy;
} uavsim_boundary;

typedef struct uavsim_min_time_result {
    double t_min;
    int feasible;
    int iterations;
    double max_speed; /* at t_min; zero for the degenerate t_min = 0 case */
    double max_speed_tau;
    double max_accel;
    double max_accel_tau;
} uavsim_min_time_result;

typedef struct uavsim_curve_point {
    double tau;
    double x, y;
    double vx, vy;
    double ax, ay;
} uavsim_curve_point;

UAVSIM_API uavsim_status uavsim_min_time(const uavsim_boundary* bc, double v_max, double a_max,
                                         uavsim_min_time_result* out);
UAVSIM_API uavsim_status uavsim_curve_sample(const uavsim_boundary* bc, double duration, double tau,
                                             uavsim_curve_point* out);

/* ---- environment ------------------------------------------------------ */

typedef struct uavsim_step_result {
    int step;
    int done;
    int status;
    int agent_count;
    double reward[UAVSIM_MAX_AGENTS];
    double shaped_reward[UAVSIM_MAX_AGENTS];
    double terminal_reward[UAVSIM_MAX_AGENTS];
    double tmin[UAVSIM_MAX_AGENTS];
    double distance_to_target;
    double separation; /* NaN without an opponent */
} uavsim_step_result;

/* The environment keeps its own copy of `cfg`. */
UAVSIM_API uavsim_status uavsim_env_create(const uavsim_config* cfg, uavsim_env** out);
UAVSIM_API uavsim_status uavsim_env_reset(uavsim_env* env, int scenario, uint64_t seed);
UAVSIM_API uavsim_status uavsim_env_agent_count(const uavsim_env* env, int* out);
UAVSIM_API uavsim_status uavsim_env_observation(const uavsim_env* env, int agent, double* out13);
/* `actions` holds `count` values, UAVSIM_ACTION_SIZE per agent (evader first). */
UAVSIM_API uavsim_status uavsim_env_step(uavsim_env* env, const double* actions, size_t count,
                                         uavsim_step_result* out);
/* Action a scripted policy would take for `agent` in the current state. */
UAVSIM_API uavsim_status uavsim_env_policy_action(uavsim_env* env, int agent, int policy, double* out2);
UAVSIM_API uavsim_status uavsim_policy_from_name(const char* name, int* out);
UAVSIM_API uavsim_status uavsim_env_initial_tmin(const uavsim_env* env, int agent, double* out);
/* Writes the recorded trajectory of the current episode as CSV. */
UAVSIM_API uavsim_status uavsim_env_write_trajectory(const uavsim_env* env, const char* path);
UAVSIM_API void uavsim_env_destroy(uavsim_env* env);

/* ---- environment server ----------------------------------------------- */

/* Starts listening immediately; port 0 selects an ephemeral port. */
UAVSIM_API uavsim_status uavsim_server_start(const uavsim_config* cfg, const char* bind_address, uint16_t port,
                                             uavsim_server** out);
UAVSIM_API uavsim_status uavsim_server_port(const uavsim_server* server, uint16_t* out);
UAVSIM_API uavsim_status uavsim_server_wait(uavsim_server* server);
UAVSIM_API uavsim_status uavsim_server_stop(uavsim_server* server);
UAVSIM_API void uavsim_server_destroy(uavsim_server* server);

#ifdef __cplusplus
}
#endif

#endif /* UAVSIM_H */
