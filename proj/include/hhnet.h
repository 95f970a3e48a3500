/*
 * hhnet: SIR epidemics on a configuration-model network with household
 * structure. Asymptotic threshold, major-outbreak probability and expected
 * final size, plus a finite-population simulator to check them against.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an hhnet_status;
 * on failure hhnet_last_error() describes the problem (thread-local).
 * Handles are immutable after creation except through the explicit
 * hhnet_model_set_* calls, and may be shared between threads when not
 * being modified.
 */
#ifndef HHNET_H
#define HHNET_H

#include <stddef.h>
#include <stdint.h>

#if defined(HHNET_BUILDING_LIBRARY)
#define HHNET_API __attribute__((visibility("default")))
#else
#define HHNET_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hhnet_status {
    HHNET_OK = 0,
    HHNET_ERR_INVALID_ARGUMENT = 1, /* bad parameter or null pointer */
    HHNET_ERR_DOMAIN = 2,           /* argument outside an evaluator's domain */
    HHNET_ERR_DEGENERATE = 3,       /* e.g. size-biasing with zero mean degree */
    HHNET_ERR_CONDITIONING = 4,     /* triangular system lost precision */
    HHNET_ERR_NO_CONVERGENCE = 5,
    HHNET_ERR_NO_ROOT = 6, /* no critical lambda_G exists */
    HHNET_ERR_MODE = 7,    /* operation undefined for the initial-infective mode */
    HHNET_ERR_IO = 8,
    HHNET_ERR_INTERNAL = 99
} hhnet_status;

typedef enum hhnet_method {
    HHNET_METHOD_CLOSED_FORM_FIXED = 0,
    HHNET_METHOD_CLOSED_FORM_ZERO_INF = 1,
    HHNET_METHOD_CLOSED_FORM_TRIANGULAR = 2,
    HHNET_METHOD_MONTE_CARLO_EMPIRICAL = 3
} hhnet_method;

typedef struct hhnet_degree hhnet_degree;
typedef struct hhnet_period hhnet_period;
typedef struct hhnet_model hhnet_model;
typedef struct hhnet_network hhnet_network;

HHNET_API const char *hhnet_version(void);
/* Message for the last failing call on this thread ("" if none). */
HHNET_API const char *hhnet_last_error(void);
HHNET_API const char *hhnet_status_name(hhnet_status status);
HHNET_API const char *hhnet_method_name(hhnet_method method);

/* ---- degree distribution D ------------------------------------------- */

/* tail_cap == 0 selects the default truncation (1e5). */
HHNET_API hhnet_status hhnet_degree_poisson(double mean, hhnet_degree **out);
HHNET_API hhnet_status hhnet_degree_geometric(double success_prob, hhnet_degree **out);
HHNET_API hhnet_status hhnet_degree_geometric_mean(double mean, hhnet_degree **out);
HHNET_API hhnet_status hhnet_degree_constant(size_t degree, hhnet_degree **out);
HHNET_API hhnet_status hhnet_degree_power_law(size_t k_star, double exponent, size_t flat_start, size_t tail_cap,
                                              hhnet_degree **out);
HHNET_API hhnet_status hhnet_degree_power_law_cutoff(double scale, double exponent, size_t tail_cap,
                                                     hhnet_degree **out);
HHNET_API void hhnet_degree_free(hhnet_degree *degree);

HHNET_API hhnet_status hhnet_degree_moments(const hhnet_degree *degree, double *mean, double *variance);
HHNET_API hhnet_status hhnet_degree_pmf(const hhnet_degree *degree, size_t k, double *out);
HHNET_API hhnet_status hhnet_degree_pgf(const hhnet_degree *degree, double s, double *out);
/* Writes a NUL-terminated description such as "poisson(5)"; truncates. */
HHNET_API hhnet_status hhnet_degree_describe(const hhnet_degree *degree, char *buf, size_t len);

/* ---- infectious period I --------------------------------------------- */

HHNET_API hhnet_status hhnet_period_fixed(double duration, hhnet_period **out);
HHNET_API hhnet_status hhnet_period_zero_or_infinite(double p_infinite, hhnet_period **out);
HHNET_API hhnet_status hhnet_period_exponential(double mean, hhnet_period **out);
HHNET_API void hhnet_period_free(hhnet_period *period);
HHNET_API hhnet_status hhnet_period_laplace(const hhnet_period *period, double theta, double *out);

/* ---- within-household distributions ---------------------------------- */

/* Fill out[0..n-1] with P(T = k) / P(M = k). len must be >= n. */
HHNET_API hhnet_status hhnet_local_final_size_dist(int n, double lambda_L, const hhnet_period *period, double *out,
                                                   size_t len);
HHNET_API hhnet_status hhnet_susceptibility_set_dist(int n, double lambda_L, const hhnet_period *period,
                                                     double *out, size_t len);

/* ---- model ----------------------------------------------------------- */

/* Copies degree and period; the caller keeps ownership of both. */
HHNET_API hhnet_status hhnet_model_create(int n, double lambda_L, double lambda_G, const hhnet_degree *degree,
                                          const hhnet_period *period, hhnet_model **out);
HHNET_API void hhnet_model_free(hhnet_model *model);
HHNET_API hhnet_status hhnet_model_set_lambda_local(hhnet_model *model, double lambda_L);
HHNET_API hhnet_status hhnet_model_set_lambda_global(hhnet_model *model, double lambda_G);
/* degree < 0: initial infective chosen uniformly at random (default). */
HHNET_API hhnet_status hhnet_model_set_initial_degree(hhnet_model *model, long long degree);
/* Draw count and seed for Monte Carlo forward PGFs (exponential period). */
HHNET_API hhnet_status hhnet_model_set_monte_carlo(hhnet_model *model, size_t draws, uint64_t seed);
HHNET_API hhnet_status hhnet_model_degree_moments(const hhnet_model *model, double *mean, double *variance);

typedef struct hhnet_analytics_result {
    double r_star;
    double sigma;   /* extinction probability of the forward process */
    double xi;      /* extinction probability of the backward process */
    double p_major; /* probability of a major outbreak */
    double z_final; /* expected relative final size of a major outbreak */
    hhnet_method method;
    int pathological;
} hhnet_analytics_result;

HHNET_API hhnet_status hhnet_analyze(const hhnet_model *model, hhnet_analytics_result *out);
HHNET_API hhnet_status hhnet_r_star(const hhnet_model *model, double *out);
/* Smallest lambda_G making the model supercritical (model's lambda_G ignored). */
HHNET_API hhnet_status hhnet_critical_lambda_g(const hhnet_model *model, double *out);

/* ---- simulation ------------------------------------------------------ */

typedef struct hhnet_batch_options {
    size_t households;
    size_t replicates;
    double cutoff_fraction; /* major outbreak iff final size >= cutoff * m * n */
    uint64_t seed;
    unsigned threads; /* 0: hardware concurrency */
    int fixed_network;
} hhnet_batch_options;

/* households 1000, replicates 2000, cutoff 0.15, seed 1, threads 0. */
HHNET_API hhnet_batch_options hhnet_batch_options_default(void);

typedef struct hhnet_batch_summary {
    size_t replicates;
    double cutoff_fraction;
    size_t n_major;
    double p_hat;
    double p_se;
    int has_z;    /* z_hat valid (n_major > 0) */
    double z_hat; /* mean relative final size over major outbreaks */
    int has_z_se; /* z_se valid (n_major > 1) */
    double z_se;
} hhnet_batch_summary;

typedef struct hhnet_replicate_record {
    size_t replicate;
    size_t final_size;
    size_t households_infected;
    int is_major;
} hhnet_replicate_record;

/* records may be NULL; otherwise it must hold options->replicates entries. */
HHNET_API hhnet_status hhnet_run_batch(const hhnet_model *model, const hhnet_batch_options *options,
                                       hhnet_batch_summary *summary, hhnet_replicate_record *records);

/* ---- networks -------------------------------------------------------- */

typedef struct hhnet_imperfections {
    size_t self_loops;
    size_t parallel_edges;
    size_t household_self_loops;
    size_t household_parallel_edges;
} hhnet_imperfections;

HHNET_API hhnet_status hhnet_network_build(size_t households, int n, const hhnet_degree *degree, uint64_t seed,
                                           int require_simple, hhnet_network **out);
HHNET_API void hhnet_network_free(hhnet_network *net);
HHNET_API hhnet_status hhnet_network_edge_count(const hhnet_network *net, size_t *out);
HHNET_API hhnet_status hhnet_network_imperfections(const hhnet_network *net, hhnet_imperfections *out);
/* Debug dump: edge list (src,dst) and per-individual degrees. */
HHNET_API hhnet_status hhnet_network_write_csv(const hhnet_network *net, const char *edges_path,
                                               const char *degrees_path);

#ifdef __cplusplus
}
#endif

#endif /* HHNET_H */
