/*
 * Copyright 2026 The cbslab Authors
 * SPDX-License-Identifier: Apache-2.0
 */

/*
 * C interface to the compressive binary search laboratory.
 *
 * Objects are opaque handles created by cbs_*_create / cbs_run / cbs_sweep_run
 * and released with the matching *_destroy. Every fallible call returns a
 * cbs_status; on failure a message describing the most recent error on the
 * calling thread is available from cbs_last_error().
 *
 * String output follows snprintf conventions: the text (including the NUL
 * terminator) is written to buf if it fits in cap bytes, and *needed always
 * receives the full length excluding the terminator. Pass buf = NULL, cap = 0
 * to query the size. CBS_ERR_BUFFER is returned when cap is too small.
 *
 * All indices are 0-based. Step numbers s run from 1 to log2(n).
 */
#ifndef CBS_CBS_H
#define CBS_CBS_H

#include <stddef.h>
#include <stdint.h>

#if defined(CBS_BUILDING_LIBRARY)
#define CBS_API __attribute__((visibility("default")))
#else
#define CBS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cbs_status {
  CBS_OK = 0,
  CBS_ERR_ARGUMENT = 1,
  CBS_ERR_INFEASIBLE_BUDGET = 2,
  CBS_ERR_CONFIG = 3,
  CBS_ERR_BUFFER = 4,
  CBS_ERR_INTERNAL = 5
} cbs_status;

typedef enum cbs_schedule_kind {
  CBS_SCHEDULE_ORIGINAL = 0,
  CBS_SCHEDULE_MODIFIED = 1,
  CBS_SCHEDULE_CUSTOM = 2
} cbs_schedule_kind;

typedef enum cbs_format { CBS_FORMAT_TEXT = 0, CBS_FORMAT_CSV = 1, CBS_FORMAT_JSON = 2 } cbs_format;

/* Bits reported by cbs_schedule_violations. */
#define CBS_VIOLATION_WRONG_LENGTH 0x1u
#define CBS_VIOLATION_ZERO_COUNT 0x2u
#define CBS_VIOLATION_BUDGET_EXCEEDED 0x4u
#define CBS_VIOLATION_BAD_DIMENSION 0x8u

typedef struct cbs_schedule cbs_schedule;
typedef struct cbs_trace cbs_trace;
typedef struct cbs_sweep cbs_sweep;

CBS_API const char* cbs_version(void);
CBS_API const char* cbs_last_error(void);
CBS_API const char* cbs_status_name(cbs_status status);

/* ---- core model ---- */

CBS_API cbs_status cbs_sensing_weight(unsigned s, unsigned s0, double* out);

/* ---- allocation ---- */

/* Original or modified formula schedule for dimension n and budget m. */
CBS_API cbs_status cbs_schedule_create(uint64_t n, uint64_t m, cbs_schedule_kind kind,
                                       cbs_schedule** out);
/* Custom counts are stored as given; check them with cbs_schedule_violations. */
CBS_API cbs_status cbs_schedule_create_custom(uint64_t n, uint64_t m, const uint64_t* counts,
                                              size_t len, cbs_schedule** out);
CBS_API void cbs_schedule_destroy(cbs_schedule* sched);

CBS_API cbs_schedule_kind cbs_schedule_get_kind(const cbs_schedule* sched);
CBS_API uint64_t cbs_schedule_dimension(const cbs_schedule* sched);
CBS_API uint64_t cbs_schedule_budget(const cbs_schedule* sched);
CBS_API size_t cbs_schedule_length(const cbs_schedule* sched);
CBS_API uint64_t cbs_schedule_total(const cbs_schedule* sched);
/* Count for step s in [1, length]; 0 when s is out of range. */
CBS_API uint64_t cbs_schedule_count(const cbs_schedule* sched, size_t s);
CBS_API unsigned cbs_schedule_violations(const cbs_schedule* sched);
/* 1 if m >= 2 log2 n, 0 otherwise, -1 if n is not dyadic. */
CBS_API int cbs_theorem_hypothesis_met(uint64_t n, uint64_t m);
CBS_API cbs_status cbs_schedule_render(const cbs_schedule* sched, cbs_format format, char* buf,
                                       size_t cap, size_t* needed);

/* ---- analysis ---- */

typedef struct cbs_bound_report {
  uint64_t n;
  uint64_t m;
  double delta;
  double mu_original; /* NaN when undefined (n < 4) */
  double mu_modified;
  double mu_lower;
  int theorem_hypothesis_met;
} cbs_bound_report;

CBS_API cbs_status cbs_normal_sf(double x, double* out);
CBS_API cbs_status cbs_mu_threshold_original(uint64_t n, uint64_t m, double delta, double* out);
CBS_API cbs_status cbs_mu_threshold_modified(uint64_t n, uint64_t m, double delta, double* out);
CBS_API cbs_status cbs_mu_lower_bound(uint64_t n, uint64_t m, double* out);
CBS_API cbs_status cbs_per_step_error(uint64_t n, double mu, unsigned s, uint64_t m_s,
                                      double* out);
CBS_API cbs_status cbs_exact_error_probability(uint64_t n, double mu, const cbs_schedule* sched,
                                               double* out);
CBS_API cbs_status cbs_union_bound_error(uint64_t n, double mu, const cbs_schedule* sched,
                                         double* out);
CBS_API cbs_status cbs_bounds(uint64_t n, uint64_t m, double delta, cbs_bound_report* out);
/* TEXT or JSON. */
CBS_API cbs_status cbs_bounds_render(const cbs_bound_report* report, cbs_format format, char* buf,
                                     size_t cap, size_t* needed);

/* ---- engine ---- */

typedef struct cbs_step_record {
  unsigned s;
  uint64_t interval_start;
  uint64_t interval_length;
  uint64_t m_s;
  double statistic;
  int chose_left;
  int spike_still_inside;
} cbs_step_record;

/* One CBS execution. noiseless != 0 replaces every noise sample with zero
 * (seed is then ignored and mu must be positive). */
CBS_API cbs_status cbs_run(uint64_t n, uint64_t spike_index, double mu, const cbs_schedule* sched,
                           uint64_t seed, int noiseless, cbs_trace** out);
CBS_API void cbs_trace_destroy(cbs_trace* trace);
CBS_API uint64_t cbs_trace_estimated_index(const cbs_trace* trace);
CBS_API int cbs_trace_success(const cbs_trace* trace);
CBS_API uint64_t cbs_trace_draws(const cbs_trace* trace);
CBS_API size_t cbs_trace_step_count(const cbs_trace* trace);
/* Step s in [1, step_count]. */
CBS_API cbs_status cbs_trace_step(const cbs_trace* trace, size_t s, cbs_step_record* out);
CBS_API cbs_status cbs_trace_render_json(const cbs_trace* trace, char* buf, size_t cap,
                                         size_t* needed);

/* ---- Monte Carlo ---- */

typedef struct cbs_sweep_config {
  const cbs_schedule* schedule; /* fixes n and m */
  const double* mu_values;      /* strictly increasing, nonnegative */
  size_t mu_count;
  uint64_t trials;
  uint64_t master_seed;
  int fixed_spike;      /* nonzero: always use spike_index */
  uint64_t spike_index; /* ignored unless fixed_spike */
  unsigned threads;     /* 0: CBS_THREADS or hardware concurrency */
} cbs_sweep_config;

typedef struct cbs_curve_point {
  double mu;
  uint64_t trials;
  uint64_t failures;
  double p_hat;
  double ci_low;
  double ci_high;
  double p_exact;
  int within_envelope;
} cbs_curve_point;

CBS_API cbs_status cbs_sweep_run(const cbs_sweep_config* config, cbs_sweep** out);
CBS_API void cbs_sweep_destroy(cbs_sweep* sweep);
CBS_API size_t cbs_sweep_point_count(const cbs_sweep* sweep);
CBS_API cbs_status cbs_sweep_point(const cbs_sweep* sweep, size_t index, cbs_curve_point* out);
/* CSV rows; with include_header != 0 the column header line comes first. */
CBS_API cbs_status cbs_sweep_render_csv(const cbs_sweep* sweep, int include_header, char* buf,
                                        size_t cap, size_t* needed);
CBS_API const char* cbs_sweep_csv_header(void);

CBS_API cbs_status cbs_wilson_interval(uint64_t failures, uint64_t trials, double confidence,
                                       double* low, double* high);
CBS_API unsigned cbs_default_thread_count(void);

#ifdef __cplusplus
}
#endif

#endif /* CBS_CBS_H */
