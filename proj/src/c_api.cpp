// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbs/cbs.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <string>
#include <tuple>

#include "cbs/allocation.hpp"
#include "cbs/analysis.hpp"
#include "cbs/core_model.hpp"
#include "cbs/engine.hpp"
#include "cbs/error.hpp"
#include "cbs/montecarlo.hpp"

struct cbs_schedule {
  cbs::Schedule value;
};

struct cbs_trace {
  cbs::RunTrace value;
};

struct cbs_sweep {
  cbs::SweepConfig config;
  std::vector<cbs::ErrorCurvePoint> points;
};

namespace {

thread_local std::string last_error;

cbs_status fail(cbs_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs fn, mapping the core's exceptions onto status codes.
template <typename Fn>
cbs_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return CBS_OK;
  } catch (const cbs::InfeasibleBudgetError& e) {
    return fail(CBS_ERR_INFEASIBLE_BUDGET, e.what());
  } catch (const cbs::ConfigError& e) {
    return fail(CBS_ERR_CONFIG, e.what());
  } catch (const cbs::ArgumentError& e) {
    return fail(CBS_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(CBS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CBS_ERR_INTERNAL, "unknown error");
  }
}

cbs_status emit(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (needed) {
    *needed = text.size();
  }
  if (buf == nullptr && cap == 0) {
    return CBS_OK;
  }
  if (buf == nullptr || cap <= text.size()) {
    return fail(CBS_ERR_BUFFER, "output buffer too small");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return CBS_OK;
}

cbs::ScheduleKind to_kind(cbs_schedule_kind kind) {
  switch (kind) {
    case CBS_SCHEDULE_ORIGINAL: return cbs::ScheduleKind::Original;
    case CBS_SCHEDULE_MODIFIED: return cbs::ScheduleKind::Modified;
    case CBS_SCHEDULE_CUSTOM: return cbs::ScheduleKind::Custom;
  }
  throw cbs::ArgumentError("unknown schedule kind");
}

template <typename T>
void require(const T* p, const char* name) {
  if (p == nullptr) {
    throw cbs::ArgumentError(std::string(name) + " must not be null");
  }
}

}  // namespace

extern "C" {

const char* cbs_version(void) { return "0.1.0"; }

const char* cbs_last_error(void) { return last_error.c_str(); }

const char* cbs_status_name(cbs_status status) {
  switch (status) {
    case CBS_OK: return "ok";
    case CBS_ERR_ARGUMENT: return "argument error";
    case CBS_ERR_INFEASIBLE_BUDGET: return "infeasible budget";
    case CBS_ERR_CONFIG: return "configuration error";
    case CBS_ERR_BUFFER: return "buffer too small";
    case CBS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

cbs_status cbs_sensing_weight(unsigned s, unsigned s0, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cbs::sensing_weight(s, s0);
  });
}

// ---- allocation ----

cbs_status cbs_schedule_create(uint64_t n, uint64_t m, cbs_schedule_kind kind, cbs_schedule** out) {
  return guarded([&] {
    require(out, "out");
    *out = new cbs_schedule{cbs::make_schedule(to_kind(kind), n, m)};
  });
}

cbs_status cbs_schedule_create_custom(uint64_t n, uint64_t m, const uint64_t* counts, size_t len,
                                      cbs_schedule** out) {
  return guarded([&] {
    require(out, "out");
    if (len > 0) require(counts, "counts");
    *out = new cbs_schedule{cbs::custom_schedule(n, m, {counts, counts + len})};
  });
}

void cbs_schedule_destroy(cbs_schedule* sched) { delete sched; }

cbs_schedule_kind cbs_schedule_get_kind(const cbs_schedule* sched) {
  switch (sched->value.kind) {
    case cbs::ScheduleKind::Original: return CBS_SCHEDULE_ORIGINAL;
    case cbs::ScheduleKind::Modified: return CBS_SCHEDULE_MODIFIED;
    case cbs::ScheduleKind::Custom: break;
  }
  return CBS_SCHEDULE_CUSTOM;
}

uint64_t cbs_schedule_dimension(const cbs_schedule* sched) { return sched->value.n; }
uint64_t cbs_schedule_budget(const cbs_schedule* sched) { return sched->value.budget; }
size_t cbs_schedule_length(const cbs_schedule* sched) { return sched->value.counts.size(); }
uint64_t cbs_schedule_total(const cbs_schedule* sched) { return sched->value.total(); }

uint64_t cbs_schedule_count(const cbs_schedule* sched, size_t s) {
  if (s < 1 || s > sched->value.counts.size()) return 0;
  return sched->value.counts[s - 1];
}

unsigned cbs_schedule_violations(const cbs_schedule* sched) {
  unsigned bits = 0;
  for (auto v : cbs::validate_schedule(sched->value)) {
    switch (v) {
      case cbs::Violation::WrongLength: bits |= CBS_VIOLATION_WRONG_LENGTH; break;
      case cbs::Violation::ZeroCount: bits |= CBS_VIOLATION_ZERO_COUNT; break;
      case cbs::Violation::BudgetExceeded: bits |= CBS_VIOLATION_BUDGET_EXCEEDED; break;
      case cbs::Violation::BadDimension: bits |= CBS_VIOLATION_BAD_DIMENSION; break;
    }
  }
  return bits;
}

int cbs_theorem_hypothesis_met(uint64_t n, uint64_t m) {
  if (n < 2 || !cbs::is_power_of_two(n)) return -1;
  return cbs::meets_theorem_hypothesis(n, m) ? 1 : 0;
}

cbs_status cbs_schedule_render(const cbs_schedule* sched, cbs_format format, char* buf, size_t cap,
                               size_t* needed) {
  std::string text;
  const cbs_status st = guarded([&] {
    require(sched, "sched");
    switch (format) {
      case CBS_FORMAT_TEXT: text = cbs::schedule_to_text(sched->value); break;
      case CBS_FORMAT_CSV: text = cbs::schedule_to_csv(sched->value); break;
      case CBS_FORMAT_JSON: text = cbs::schedule_to_json(sched->value) + "\n"; break;
      default: throw cbs::ArgumentError("unknown format");
    }
  });
  return st == CBS_OK ? emit(text, buf, cap, needed) : st;
}

// ---- analysis ----

cbs_status cbs_normal_sf(double x, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cbs::normal_sf(x);
  });
}

cbs_status cbs_mu_threshold_original(uint64_t n, uint64_t m, double delta, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cbs::mu_threshold_original(n, m, delta);
  });
}

cbs_status cbs_mu_threshold_modified(uint64_t n, uint64_t m, double delta, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cbs::mu_threshold_modified(n, m, delta);
  });
}

cbs_status cbs_mu_lower_bound(uint64_t n, uint64_t m, double* out) {
  return guarded([&] {
    require(out, "out");
    if (n < 1 || m < 1) throw cbs::ArgumentError("n and m must be positive");
    *out = cbs::mu_lower_bound(n, m);
  });
}

cbs_status cbs_per_step_error(uint64_t n, double mu, unsigned s, uint64_t m_s, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cbs::per_step_error(n, mu, s, m_s);
  });
}

cbs_status cbs_exact_error_probability(uint64_t n, double mu, const cbs_schedule* sched,
                                       double* out) {
  return guarded([&] {
    require(out, "out");
    require(sched, "sched");
    *out = cbs::exact_error_probability(n, mu, sched->value);
  });
}

cbs_status cbs_union_bound_error(uint64_t n, double mu, const cbs_schedule* sched, double* out) {
  return guarded([&] {
    require(out, "out");
    require(sched, "sched");
    *out = cbs::union_bound_error(n, mu, sched->value);
  });
}

cbs_status cbs_bounds(uint64_t n, uint64_t m, double delta, cbs_bound_report* out) {
  return guarded([&] {
    require(out, "out");
    const auto r = cbs::bound_report(n, m, delta);
    out->n = r.n;
    out->m = r.m;
    out->delta = r.delta;
    out->mu_original = r.mu_original.value_or(std::numeric_limits<double>::quiet_NaN());
    out->mu_modified = r.mu_modified;
    out->mu_lower = r.mu_lower;
    out->theorem_hypothesis_met = r.theorem_hypothesis_met ? 1 : 0;
  });
}

cbs_status cbs_bounds_render(const cbs_bound_report* report, cbs_format format, char* buf,
                             size_t cap, size_t* needed) {
  std::string text;
  const cbs_status st = guarded([&] {
    require(report, "report");
    cbs::BoundReport r;
    r.n = report->n;
    r.m = report->m;
    r.delta = report->delta;
    if (!std::isnan(report->mu_original)) r.mu_original = report->mu_original;
    r.mu_modified = report->mu_modified;
    r.mu_lower = report->mu_lower;
    r.theorem_hypothesis_met = report->theorem_hypothesis_met != 0;
    switch (format) {
      case CBS_FORMAT_TEXT: text = cbs::bound_report_to_text(r); break;
      case CBS_FORMAT_JSON: text = cbs::bound_report_to_json(r) + "\n"; break;
      default: throw cbs::ArgumentError("bounds render as text or json");
    }
  });
  return st == CBS_OK ? emit(text, buf, cap, needed) : st;
}

// ---- engine ----

cbs_status cbs_run(uint64_t n, uint64_t spike_index, double mu, const cbs_schedule* sched,
                   uint64_t seed, int noiseless, cbs_trace** out) {
  return guarded([&] {
    require(out, "out");
    require(sched, "sched");
    const cbs::ProblemInstance inst{n, spike_index, mu};
    if (noiseless) {
      *out = new cbs_trace{cbs::run_cbs_noiseless(inst, sched->value)};
    } else {
      cbs::NoiseSource noise(seed);
      *out = new cbs_trace{cbs::run_cbs(inst, sched->value, noise)};
    }
  });
}

void cbs_trace_destroy(cbs_trace* trace) { delete trace; }
uint64_t cbs_trace_estimated_index(const cbs_trace* trace) { return trace->value.estimated_index; }
int cbs_trace_success(const cbs_trace* trace) { return trace->value.success ? 1 : 0; }
uint64_t cbs_trace_draws(const cbs_trace* trace) { return trace->value.draws; }
size_t cbs_trace_step_count(const cbs_trace* trace) { return trace->value.steps.size(); }

cbs_status cbs_trace_step(const cbs_trace* trace, size_t s, cbs_step_record* out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    if (s < 1 || s > trace->value.steps.size()) throw cbs::ArgumentError("step out of range");
    const auto& r = trace->value.steps[s - 1];
    out->s = r.s;
    out->interval_start = r.interval.start;
    out->interval_length = r.interval.length;
    out->m_s = trace->value.schedule.count_at(r.s);
    out->statistic = r.statistic;
    out->chose_left = r.chose_left ? 1 : 0;
    out->spike_still_inside = r.spike_still_inside ? 1 : 0;
  });
}

cbs_status cbs_trace_render_json(const cbs_trace* trace, char* buf, size_t cap, size_t* needed) {
  std::string text;
  const cbs_status st = guarded([&] {
    require(trace, "trace");
    text = cbs::trace_to_json(trace->value) + "\n";
  });
  return st == CBS_OK ? emit(text, buf, cap, needed) : st;
}

// ---- Monte Carlo ----

cbs_status cbs_sweep_run(const cbs_sweep_config* config, cbs_sweep** out) {
  return guarded([&] {
    require(config, "config");
    require(config->schedule, "config->schedule");
    require(out, "out");
    if (config->mu_count > 0) require(config->mu_values, "config->mu_values");
    cbs::SweepConfig cfg;
    cfg.schedule = config->schedule->value;
    cfg.mu_values.assign(config->mu_values, config->mu_values + config->mu_count);
    cfg.trials = config->trials;
    cfg.master_seed = config->master_seed;
    if (config->fixed_spike) cfg.fixed_spike = config->spike_index;
    cfg.threads = config->threads;
    auto points = cbs::run_sweep(cfg);
    *out = new cbs_sweep{std::move(cfg), std::move(points)};
  });
}

void cbs_sweep_destroy(cbs_sweep* sweep) { delete sweep; }

size_t cbs_sweep_point_count(const cbs_sweep* sweep) { return sweep->points.size(); }

cbs_status cbs_sweep_point(const cbs_sweep* sweep, size_t index, cbs_curve_point* out) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out, "out");
    if (index >= sweep->points.size()) throw cbs::ArgumentError("point index out of range");
    const auto& p = sweep->points[index];
    *out = cbs_curve_point{p.mu,     p.trials,  p.failures, p.p_hat,
                           p.ci_low, p.ci_high, p.p_exact,  p.within_envelope ? 1 : 0};
  });
}

cbs_status cbs_sweep_render_csv(const cbs_sweep* sweep, int include_header, char* buf, size_t cap,
                                size_t* needed) {
  std::string text;
  const cbs_status st = guarded([&] {
    require(sweep, "sweep");
    if (include_header) {
      text = cbs::kSweepCsvHeader;
      text += '\n';
    }
    text += cbs::sweep_rows_csv(sweep->config, sweep->points);
  });
  return st == CBS_OK ? emit(text, buf, cap, needed) : st;
}

const char* cbs_sweep_csv_header(void) { return cbs::kSweepCsvHeader; }

cbs_status cbs_wilson_interval(uint64_t failures, uint64_t trials, double confidence, double* low,
                               double* high) {
  return guarded([&] {
    require(low, "low");
    require(high, "high");
    std::tie(*low, *high) = cbs::wilson_interval(failures, trials, confidence);
  });
}

unsigned cbs_default_thread_count(void) { return cbs::default_thread_count(); }

}  // extern "C"
