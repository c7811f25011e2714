// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbs/analysis.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "cbs/core_model.hpp"
#include "cbs/error.hpp"

namespace cbs {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw ArgumentError("delta must lie in (0, 1/2]");
  }
}

void check_budget(std::uint64_t m) {
  if (m < 1) {
    throw ArgumentError("budget m must be at least 1");
  }
}

void check_schedule_for(std::uint64_t n, const Schedule& sched) {
  require_valid(sched);
  if (sched.n != n) {
    throw ArgumentError("schedule dimension does not match n");
  }
}

}  // namespace

// erfc keeps full relative accuracy in the upper tail, unlike 1 - Phi(x).
double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double mu_threshold_original(std::uint64_t n, std::uint64_t m, double delta) {
  check_delta(delta);
  check_budget(m);
  if (n < 4 || !is_power_of_two(n)) {
    throw ArgumentError("the original threshold needs a power-of-two n >= 4");
  }
  const double s0 = static_cast<double>(exact_log2(n));
  const double scale = 8.0 * static_cast<double>(n) / static_cast<double>(m);
  return std::sqrt(scale * (std::log(1.0 / (2.0 * delta)) + std::log(s0)));
}

double mu_threshold_modified(std::uint64_t n, std::uint64_t m, double delta) {
  check_delta(delta);
  check_budget(m);
  step_count(n);
  const double scale = 16.0 * static_cast<double>(n) / static_cast<double>(m);
  return std::sqrt(scale * std::log(1.0 / (2.0 * delta) + 1.0));
}

double mu_lower_bound(std::uint64_t n, std::uint64_t m) {
  return std::sqrt(static_cast<double>(n) / static_cast<double>(m));
}

double per_step_error(std::uint64_t n, double mu, unsigned s, std::uint64_t m_s) {
  const unsigned s0 = step_count(n);
  if (s < 1 || s > s0) {
    throw ArgumentError("step out of range");
  }
  if (m_s < 1) {
    throw ArgumentError("measurement count must be at least 1");
  }
  // m_s 2^s / (2n) = m_s 2^{s - s0 - 1}
  const double snr = static_cast<double>(m_s) * std::ldexp(1.0, static_cast<int>(s) - static_cast<int>(s0) - 1);
  return normal_sf(mu * std::sqrt(snr));
}

double exact_error_probability(std::uint64_t n, double mu, const Schedule& sched) {
  check_schedule_for(n, sched);
  double log_success = 0.0;
  for (unsigned s = 1; s <= sched.counts.size(); ++s) {
    log_success += std::log1p(-per_step_error(n, mu, s, sched.count_at(s)));
  }
  return -std::expm1(log_success);
}

double union_bound_error(std::uint64_t n, double mu, const Schedule& sched) {
  check_schedule_for(n, sched);
  double sum = 0.0;
  for (unsigned s = 1; s <= sched.counts.size(); ++s) {
    const double exponent = static_cast<double>(sched.count_at(s)) * mu * mu *
                            std::ldexp(1.0, static_cast<int>(s)) / (4.0 * static_cast<double>(n));
    sum += std::exp(-exponent);
  }
  return 0.5 * sum;
}

BoundReport bound_report(std::uint64_t n, std::uint64_t m, double delta) {
  BoundReport r;
  r.n = n;
  r.m = m;
  r.delta = delta;
  r.mu_modified = mu_threshold_modified(n, m, delta);
  if (n >= 4) {
    r.mu_original = mu_threshold_original(n, m, delta);
  }
  r.mu_lower = mu_lower_bound(n, m);
  r.theorem_hypothesis_met = meets_theorem_hypothesis(n, m);
  return r;
}

std::string bound_report_to_json(const BoundReport& r) {
  nlohmann::json j = {{"n", r.n},
                      {"m", r.m},
                      {"delta", r.delta},
                      {"mu_eq1", r.mu_original ? nlohmann::json(*r.mu_original) : nlohmann::json()},
                      {"mu_eq3", r.mu_modified},
                      {"mu_lower", r.mu_lower},
                      {"theorem_hypothesis_met", r.theorem_hypothesis_met}};
  return j.dump(2);
}

std::string bound_report_to_text(const BoundReport& r) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf, "n = %llu, m = %llu, delta = %g\n",
                static_cast<unsigned long long>(r.n), static_cast<unsigned long long>(r.m),
                r.delta);
  out += buf;
  if (r.mu_original) {
    std::snprintf(buf, sizeof buf, "  %-34s %12.6f\n", "mu_eq1   (original schedule)", *r.mu_original);
  } else {
    std::snprintf(buf, sizeof buf, "  %-34s %12s\n", "mu_eq1   (original schedule)", "n/a");
  }
  out += buf;
  std::snprintf(buf, sizeof buf, "  %-34s %12.6f\n", "mu_eq3   (modified schedule)", r.mu_modified);
  out += buf;
  std::snprintf(buf, sizeof buf, "  %-34s %12.6f\n", "mu_lower (no procedure beats 1/2)", r.mu_lower);
  out += buf;
  std::snprintf(buf, sizeof buf, "  %-34s %12s\n", "theorem_hypothesis_met (m>=2log2n)",
                r.theorem_hypothesis_met ? "true" : "false");
  out += buf;
  return out;
}

}  // namespace cbs
