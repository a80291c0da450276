#ifndef LRDLAB_LRDLAB_H
#define LRDLAB_LRDLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(LRDLAB_BUILDING_LIBRARY)
#define LRDLAB_API __attribute__((visibility("default")))
#else
#define LRDLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lrd_status {
    LRD_OK = 0,
    LRD_ERR_ARGUMENT = 1,    /* null pointer or invalid count */
    LRD_ERR_CONFIG = 2,      /* malformed spec, config or option */
    LRD_ERR_DOMAIN = 3,      /* parameter outside the mathematical domain */
    LRD_ERR_CONVERGENCE = 4, /* adaptive procedure exhausted its budget */
    LRD_ERR_COVERAGE = 5,    /* requested lag beyond what can be computed */
    LRD_ERR_INTERNAL = 6
} lrd_status;

typedef struct lrd_process lrd_process;
typedef struct lrd_acvf lrd_acvf;

typedef struct lrd_tolerance {
    double abs_tol;
    double rel_tol;
    uint64_t max_terms;
} lrd_tolerance;

/* Message of the last failed call on this thread ("" if none). */
LRDLAB_API const char* lrd_last_error(void);
LRDLAB_API const char* lrd_status_name(lrd_status status);
LRDLAB_API lrd_tolerance lrd_tolerance_default(void);
/* Worker threads used by parallel loops (LRD_LAB_THREADS caps it). */
LRDLAB_API size_t lrd_thread_budget(void);

/* Strings returned through char** are owned by the caller. */
LRDLAB_API void lrd_string_free(char* s);

LRDLAB_API lrd_status lrd_process_from_json(const char* json, lrd_process** out);
LRDLAB_API void lrd_process_free(lrd_process* p);
LRDLAB_API lrd_status lrd_process_to_json(const lrd_process* p, char** out);
/* The same process rescaled to unit variance. */
LRDLAB_API lrd_status lrd_process_unit_variance(const lrd_process* p, const lrd_tolerance* tol, lrd_process** out);
LRDLAB_API lrd_status lrd_process_dominant_hurst(const lrd_process* p, double* H);
/* H and V of the matched fGn fixed point; the process must be long-range dependent. */
LRDLAB_API lrd_status lrd_fixed_point(const lrd_process* p, double* H, double* V);

LRDLAB_API lrd_status lrd_spectrum(const lrd_process* p, const double* x, size_t count, const lrd_tolerance* tol,
                                   double* out);

/* tol may be NULL for defaults. */
LRDLAB_API lrd_status lrd_acvf_create(const lrd_process* p, size_t n_max, const lrd_tolerance* tol, lrd_acvf** out);
LRDLAB_API void lrd_acvf_free(lrd_acvf* a);
/* Writes gamma(0..n_max) to out[0..n_max], extending the table as needed. */
LRDLAB_API lrd_status lrd_acvf_values(const lrd_acvf* a, size_t n_max, double* out);
/* "closed_form", "spectral_subtraction", "convolution" or "sum_of_components". */
LRDLAB_API const char* lrd_acvf_route(const lrd_acvf* a);

/* omega^(m)(n) = omega(mn) / m^2 for n = 0..n_max; m = 1 gives the plain VTF. */
LRDLAB_API lrd_status lrd_vtf(const lrd_acvf* a, size_t m, size_t n_max, double* out);
/* rho^(m)(n) = omega(mn) / omega(m) for n = 0..n_max. */
LRDLAB_API lrd_status lrd_ctf(const lrd_acvf* a, size_t m, size_t n_max, double* out);

typedef struct lrd_closeness_options {
    const size_t* offset_probes; /* NULL: 10, 100, 1000, 10000 */
    size_t offset_probe_count;
    const size_t* levels;        /* NULL: 1, 2, 4, ..., 1024 */
    size_t level_count;
    size_t ctf_lag;              /* 0: 2 */
} lrd_closeness_options;

/* Either output may be NULL. json_out gets the report, csv_out its curves. */
LRDLAB_API lrd_status lrd_closeness(const lrd_process* p, const lrd_closeness_options* opts, const lrd_tolerance* tol,
                                    char** json_out, char** csv_out);

/* Built-in experiment (id 1..3, config_json NULL) or a JSON config (id 0).
   levels/lags override the experiment's when non-NULL. */
LRDLAB_API lrd_status lrd_brittleness(int id, const char* config_json, const size_t* levels, size_t level_count,
                                      const size_t* lags, size_t lag_count, const lrd_tolerance* tol, char** json_out,
                                      char** csv_out);

/* count paths of length N; path i (stream i) goes to out[i * N .. i * N + N - 1]. */
LRDLAB_API lrd_status lrd_sample(const lrd_process* p, size_t N, size_t count, uint64_t seed, const lrd_tolerance* tol,
                                 double* out);

#ifdef __cplusplus
}
#endif

#endif
