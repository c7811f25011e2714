// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cbs/allocation.hpp"

namespace cbs {

/// Q(x) = P(Z > x) for standard normal Z.
double normal_sf(double x);

/// Threshold on mu for the original schedule to reach total error <= delta:
/// sqrt((8n/m) (ln(1/(2 delta)) + ln log2 n)). Requires 0 < delta <= 1/2, n >= 4.
double mu_threshold_original(std::uint64_t n, std::uint64_t m, double delta);

/// Threshold for the modified schedule: sqrt((16n/m) ln(1/(2 delta) + 1)).
/// Computed for any m >= 1; the guarantee needs m >= 2 log2 n.
double mu_threshold_modified(std::uint64_t n, std::uint64_t m, double delta);

/// sqrt(n/m). Below this no procedure succeeds with probability above 1/2.
double mu_lower_bound(std::uint64_t n, std::uint64_t m);

/// Exact probability that step s decides wrongly given the spike is still in the
/// support: Q(mu sqrt(m_s 2^s / (2n))).
double per_step_error(std::uint64_t n, double mu, unsigned s, std::uint64_t m_s);

/// Exact failure probability of CBS: 1 - prod_s (1 - per_step_error). A run
/// succeeds iff every step decides correctly, so this is not a bound.
double exact_error_probability(std::uint64_t n, double mu, const Schedule& sched);

/// The union + Gaussian tail bound 1/2 sum_s exp(-m_s mu^2 2^s / (4n)), unclamped.
double union_bound_error(std::uint64_t n, double mu, const Schedule& sched);

struct BoundReport {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double delta = 0.0;
  std::optional<double> mu_original;  // undefined for n < 4
  double mu_modified = 0.0;
  double mu_lower = 0.0;
  bool theorem_hypothesis_met = false;
};

BoundReport bound_report(std::uint64_t n, std::uint64_t m, double delta);

std::string bound_report_to_json(const BoundReport& r);
std::string bound_report_to_text(const BoundReport& r);

}  // namespace cbs
