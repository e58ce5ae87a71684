/* C interface to the curved-crack surface-tension solver. */
#ifndef CST_CST_H
#define CST_CST_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CST_API __declspec(dllexport)
#else
#define CST_API __attribute__((visibility("default")))
#endif

typedef enum {
    CST_OK = 0,
    CST_ERR_IO = 1,
    CST_ERR_CONFIG = 2,
    CST_ERR_ASSEMBLY = 3,
    CST_ERR_SOLVE = 4,
    CST_ERR_ARGUMENT = 5
} cst_status;

typedef enum { CST_SIDE_PLUS = 0, CST_SIDE_MINUS = 1 } cst_side;

enum { CST_RUN_DUMP_SYSTEM = 1, CST_RUN_QUIET = 2 };

typedef struct cst_config cst_config;
typedef struct cst_solution cst_solution;

typedef struct {
    double sigma_n, tau_n;
    double du1_ds, du2_ds;
    double dut_ds, dun_ds;
} cst_face_sample;

/* Message of the last failed call on this thread ("" if none). */
CST_API const char* cst_last_error(void);
CST_API const char* cst_version(void);

CST_API cst_status cst_config_parse(const char* text, cst_config** out);
/* Overrides one key, revalidating the whole configuration. */
CST_API cst_status cst_config_set(cst_config* cfg, const char* key, const char* value);
/* Effective configuration; the pointer lives until the next call on cfg. */
CST_API const char* cst_config_echo(cst_config* cfg);
CST_API void cst_config_free(cst_config* cfg);

/* Runs the configured mode and writes artifacts into out_dir. */
CST_API cst_status cst_run(const cst_config* cfg, const char* out_dir, int flags);

/* Leaves only the raw configuration text and an error log in out_dir
   (used when the configuration itself cannot be parsed). */
CST_API cst_status cst_write_error(const char* out_dir, const char* config_text, const char* message,
                                   cst_status code);

CST_API cst_status cst_solve(const cst_config* cfg, cst_solution** out);
CST_API cst_status cst_solution_face(const cst_solution* sol, double s, cst_side side, cst_face_sample* out);
/* g1 and g2 must hold N+1 doubles each. */
CST_API cst_status cst_solution_coefficients(const cst_solution* sol, double* g1, double* g2, int capacity);
CST_API int cst_solution_degree(const cst_solution* sol);
CST_API double cst_solution_condition(const cst_solution* sol);
CST_API void cst_solution_free(cst_solution* sol);

#ifdef __cplusplus
}
#endif

#endif
