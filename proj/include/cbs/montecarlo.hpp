// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbs/allocation.hpp"

namespace cbs {

struct SweepConfig {
  Schedule schedule;                        // fixes n and m
  std::vector<double> mu_values;            // strictly increasing, >= 0
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::optional<std::uint64_t> fixed_spike;  // unset: uniform random per trial
  unsigned threads = 1;                      // 0 picks hardware concurrency
};

struct ErrorCurvePoint {
  double mu = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;   // 95% Wilson
  double ci_high = 0.0;
  double p_exact = 0.0;
  bool within_envelope = false;  // failures inside the 99.7% binomial range of p_exact
};

/// Seed of trial `trial_index` at grid point `mu_index`. Independent of thread
/// count and execution order.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t mu_index,
                         std::uint64_t trial_index) noexcept;

/// Spike position for a trial under uniform placement. n must be a power of two.
std::uint64_t trial_spike(std::uint64_t seed, std::uint64_t n) noexcept;

/// Throws ConfigError (or InfeasibleBudgetError/ArgumentError from the schedule)
/// on bad configurations.
void validate_config(const SweepConfig& cfg);

std::vector<ErrorCurvePoint> run_sweep(const SweepConfig& cfg);

/// Wilson score interval for a binomial proportion, clamped to [0, 1].
std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials,
                                          double confidence);

/// Central interval [lo, hi] of failure counts holding at least `coverage` of
/// Binomial(trials, p) mass.
std::pair<std::uint64_t, std::uint64_t> binomial_envelope(double p, std::uint64_t trials,
                                                          double coverage = 0.997);

/// Default threads: CBS_THREADS if set and positive, else hardware concurrency.
unsigned default_thread_count();

/// Evenly spaced grid of `steps` values on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

inline constexpr const char* kSweepCsvHeader =
    "mu,trials,failures,p_hat,ci_low,ci_high,p_exact,schedule,n,m,seed";

/// Rows for one schedule, without the header line.
std::string sweep_rows_csv(const SweepConfig& cfg, const std::vector<ErrorCurvePoint>& points);

}  // namespace cbs
