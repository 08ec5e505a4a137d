/*
 * umo: comparison of uncertain objective values, dominance decisions and
 * the surrounding experiment drivers, exposed as a flat C interface over
 * opaque handles.  Every entry point returns a status code; on failure
 * umo_last_error() describes what went wrong in the calling thread.
 */
#ifndef UMO_H
#define UMO_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(UMO_BUILDING)
#define UMO_API __declspec(dllexport)
#else
#define UMO_API __declspec(dllimport)
#endif
#else
#if defined(UMO_BUILDING)
#define UMO_API __attribute__((visibility("default")))
#else
#define UMO_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum umo_status {
  UMO_OK = 0,
  UMO_ERR_PARSE,
  UMO_ERR_IO,
  UMO_ERR_CONFIG,
  UMO_ERR_INVALID_ARGUMENT,
  UMO_ERR_INVALID_POPULATION,
  UMO_ERR_INVALID_PROBABILITY,
  UMO_ERR_DEGENERATE_VARIANCE,
  UMO_ERR_WRONG_REPRESENTATION,
  UMO_ERR_UNBOUNDED_SUPPORT,
  UMO_ERR_PAIRING,
  UMO_ERR_INCOMPATIBLE_HISTOGRAMS,
  UMO_ERR_UNKNOWN_OPERATOR,
  UMO_ERR_INCOMPATIBLE_INDIVIDUALS,
  UMO_ERR_INVALID_DECISION_VECTOR,
  UMO_ERR_UNKNOWN_PROBLEM,
  UMO_ERR_INDICATOR_DOMAIN,
  UMO_ERR_MISSING_BOUNDS,
  UMO_ERR_EMPTY_REFERENCE,
  UMO_ERR_NO_RUNS,
  UMO_ERR_INTERNAL
} umo_status;

/* Stable kebab-case name of a status code, e.g. "unknown-operator". */
UMO_API const char* umo_status_name(umo_status status);

/* Message of the most recent failure on this thread; never NULL. */
UMO_API const char* umo_last_error(void);

/* ---------------------------------------------------------------------- */
/* Uncertain values                                                       */

/*
 * A value is either a closed-form distribution or an empirical sample
 * set.  Spec strings look like "uniform(0,1)", "gaussian(0.5,0.01)" (the
 * second parameter is the variance), "beta(2,5)", optionally transformed
 * as "beta(2,5)*0.04+0.55".
 */
typedef struct umo_value umo_value;

UMO_API umo_status umo_value_from_spec(const char* spec, umo_value** out);
UMO_API umo_status umo_value_from_samples(const double* data, size_t count,
                                          umo_value** out);
/* Loads one sample per line from a text file. */
UMO_API umo_status umo_value_load(const char* path, umo_value** out);
UMO_API void umo_value_free(umo_value* value);

UMO_API umo_status umo_value_mean(const umo_value* value, double* out);
UMO_API umo_status umo_value_stats(const umo_value* value, double* mean,
                                   double* variance);
/* Support bounds; fails for distributions with unbounded support. */
UMO_API umo_status umo_value_bounds(const umo_value* value, double* lo,
                                    double* hi);
UMO_API umo_status umo_value_cdf(const umo_value* value, double y,
                                 double* out);
UMO_API umo_status umo_value_quantile(const umo_value* value, double p,
                                      double* out);
UMO_API umo_status umo_value_save(const umo_value* value, const char* path);

/* ---------------------------------------------------------------------- */
/* Comparison                                                             */

enum {
  UMO_DECISION_WORSE = -1,
  UMO_DECISION_INDIFFERENT = 0,
  UMO_DECISION_BETTER = 1
};

enum { UMO_MINIMIZE = 0, UMO_MAXIMIZE = 1 };

typedef struct umo_compare_options {
  double gamma;            /* decision threshold, in [0.5, 1] */
  double omega;            /* histogram bin width */
  int quantile_steps;      /* sample count when a closed form feeds a
                              sample-based operator */
  double mean_threshold;   /* three-stage mean gate */
  double spread_threshold; /* three-stage spread gate */
  int sense;               /* UMO_MINIMIZE or UMO_MAXIMIZE */
} umo_compare_options;

/* Fills in the defaults (gamma 0.5, omega 0.1, 20 steps, minimize). */
UMO_API void umo_compare_options_init(umo_compare_options* options);

typedef struct umo_report {
  double p_greater; /* estimated P(a > b) */
  double p_less;    /* estimated P(a < b) */
  int decision;     /* UMO_DECISION_* for a under the configured sense */
} umo_report;

/*
 * Operators: "pw" (index-paired samples), "uni1" (bounds as a uniform),
 * "uni2" (moments as a uniform), "gauss" (moments as a Gaussian),
 * "hist" / "hist:<width>" (histogram overlap), "emp" (sorted samples),
 * "reduce" (square-root quantile reduction), "mean" and "threestage"
 * (decision only; probabilities are reported as 0, 1/2 or 1).
 */
UMO_API umo_status umo_compare(const umo_value* a, const umo_value* b,
                               const char* op,
                               const umo_compare_options* options,
                               umo_report* out);

/* "worse", "indifferent" or "better". */
UMO_API const char* umo_decision_name(int decision);

/* Numerically integrated P(a > b) for two closed-form spec strings. */
UMO_API umo_status umo_oracle(const char* spec_a, const char* spec_b,
                              long long resolution, double* out);

/* ---------------------------------------------------------------------- */
/* Experiment drivers                                                     */

/*
 * Estimation-error sweep over named scenario pairs.  scenario_file NULL
 * selects the built-in scenarios; ops_csv and sizes_csv are comma lists
 * (NULL selects the defaults).  Writes one CSV row per scenario,
 * operator and sample size holding the error percentile.
 */
UMO_API umo_status umo_error_sweep(const char* scenario_file,
                                   const char* ops_csv, const char* sizes_csv,
                                   int repetitions, double percentile,
                                   unsigned long long seed, int closed_form,
                                   const umo_compare_options* options,
                                   const char* out_csv);

/*
 * Median per-call timing of operator setup and comparison.  info_path
 * may be NULL to skip the build-context sidecar.
 */
UMO_API umo_status umo_timing(const char* ops_csv, const char* sizes_csv,
                              int min_invocations, unsigned long long seed,
                              const umo_compare_options* options,
                              const char* out_csv, const char* info_path);

typedef struct umo_optimize_options {
  const char* problem;       /* "udtlz1".."udtlz6" */
  int n;                     /* decision variables */
  int m;                     /* objectives */
  int noise;                 /* nonzero: perturb evaluations */
  int stddev_noise;          /* nonzero: read noise scale as a std dev */
  int population;            /* at least 2 */
  int generations;
  int samples;               /* draws per objective evaluation */
  unsigned long long seed;   /* base seed; run r uses seed + r */
  const char* op;            /* dominance operator */
  int runs;
  int dci_divisions;         /* grid resolution of the diversity metric */
  double crossover_probability;
  double crossover_index;
  double mutation_probability; /* < 0 resolves to 1/n */
  double mutation_index;
} umo_optimize_options;

UMO_API void umo_optimize_options_init(umo_optimize_options* options);

/*
 * Full optimization study: repeated runs, per-generation population
 * CSVs, a pooled reference front, metric traces per run and their
 * medians, and a pointer to the median-final-quality run.  All files
 * land in out_dir.
 */
UMO_API umo_status umo_optimize(const umo_optimize_options* options,
                                const umo_compare_options* compare_options,
                                const char* out_dir);

/*
 * Recomputes metric traces from previously written run CSVs and a
 * reference front CSV, writing the median table to out_csv.
 */
UMO_API umo_status umo_metrics(const char* const* run_files, size_t run_count,
                               const char* reference_file, int divisions,
                               const char* out_csv);

#ifdef __cplusplus
}
#endif

#endif /* UMO_H */
