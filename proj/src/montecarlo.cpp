// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbs/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <tuple>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>

#include "cbs/analysis.hpp"
#include "cbs/core_model.hpp"
#include "cbs/engine.hpp"
#include "cbs/error.hpp"

namespace cbs {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t mu_index,
                         std::uint64_t trial_index) noexcept {
  return mix(mix(mix(master_seed) ^ mu_index) ^ trial_index);
}

std::uint64_t trial_spike(std::uint64_t seed, std::uint64_t n) noexcept {
  return mix(seed ^ 0x5bd1e9955bd1e995ull) & (n - 1);
}

void validate_config(const SweepConfig& cfg) {
  // Rebuilding the formula schedules surfaces the infeasible-budget error for (n, m).
  if (cfg.schedule.kind != ScheduleKind::Custom) {
    make_schedule(cfg.schedule.kind, cfg.schedule.n, cfg.schedule.budget);
  }
  const auto violations = validate_schedule(cfg.schedule);
  if (!violations.empty()) {
    throw ConfigError("schedule is not valid for n=" + std::to_string(cfg.schedule.n) +
                      ", m=" + std::to_string(cfg.schedule.budget));
  }
  if (cfg.trials < 1) {
    throw ConfigError("trials must be at least 1");
  }
  if (cfg.mu_values.empty()) {
    throw ConfigError("mu grid is empty");
  }
  for (std::size_t i = 0; i < cfg.mu_values.size(); ++i) {
    const double mu = cfg.mu_values[i];
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw ConfigError("mu values must be finite and nonnegative");
    }
    if (i > 0 && !(mu > cfg.mu_values[i - 1])) {
      throw ConfigError("mu values must be strictly increasing");
    }
  }
  if (cfg.fixed_spike && *cfg.fixed_spike >= cfg.schedule.n) {
    throw ConfigError("fixed spike index outside [0, n)");
  }
}

std::vector<ErrorCurvePoint> run_sweep(const SweepConfig& cfg) {
  validate_config(cfg);
  const std::uint64_t n = cfg.schedule.n;
  const std::size_t points = cfg.mu_values.size();
  const unsigned threads = static_cast<unsigned>(std::clamp<std::uint64_t>(
      cfg.threads == 0 ? default_thread_count() : cfg.threads, 1, cfg.trials));

  // Worker w handles trials w, w + threads, ... and keeps its own counts; the
  // totals are order-independent sums.
  std::vector<std::vector<std::uint64_t>> failures(threads, std::vector<std::uint64_t>(points, 0));
  auto work = [&](unsigned w) {
    for (std::size_t k = 0; k < points; ++k) {
      for (std::uint64_t t = w; t < cfg.trials; t += threads) {
        const std::uint64_t seed = trial_seed(cfg.master_seed, k, t);
        const ProblemInstance inst{n, cfg.fixed_spike.value_or(trial_spike(seed, n)),
                                   cfg.mu_values[k]};
        NoiseSource noise(seed);
        if (locate(inst, cfg.schedule, noise) != inst.spike_index) {
          ++failures[w][k];
        }
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back(work, w);
    }
  }

  std::vector<ErrorCurvePoint> out;
  out.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    ErrorCurvePoint pt;
    pt.mu = cfg.mu_values[k];
    pt.trials = cfg.trials;
    for (unsigned w = 0; w < threads; ++w) {
      pt.failures += failures[w][k];
    }
    pt.p_hat = static_cast<double>(pt.failures) / static_cast<double>(pt.trials);
    std::tie(pt.ci_low, pt.ci_high) = wilson_interval(pt.failures, pt.trials, 0.95);
    pt.p_exact = exact_error_probability(n, pt.mu, cfg.schedule);
    const auto [lo, hi] = binomial_envelope(pt.p_exact, pt.trials);
    pt.within_envelope = pt.failures >= lo && pt.failures <= hi;
    out.push_back(pt);
  }
  return out;
}

std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials,
                                          double confidence) {
  if (trials < 1 || failures > trials) {
    throw ArgumentError("wilson_interval needs 0 <= failures <= trials and trials >= 1");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ArgumentError("confidence must lie in (0, 1)");
  }
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(failures) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt));
  double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = failures == trials ? 1.0 : std::min(1.0, center + half);
  return {std::min(lo, p), std::max(hi, p)};
}

std::pair<std::uint64_t, std::uint64_t> binomial_envelope(double p, std::uint64_t trials,
                                                          double coverage) {
  if (!(p >= 0.0 && p <= 1.0) || !(coverage > 0.0 && coverage < 1.0)) {
    throw ArgumentError("binomial_envelope needs p in [0, 1] and coverage in (0, 1)");
  }
  if (p == 0.0) return {0, 0};
  if (p == 1.0) return {trials, trials};
  using boost::math::policies::discrete_quantile;
  using boost::math::policies::integer_round_outwards;
  using boost::math::policies::policy;
  using Binomial = boost::math::binomial_distribution<double, policy<discrete_quantile<integer_round_outwards>>>;
  const Binomial dist(static_cast<double>(trials), p);
  const double tail = (1.0 - coverage) / 2.0;
  const double lo = boost::math::quantile(dist, tail);
  const double hi = boost::math::quantile(boost::math::complement(dist, tail));
  return {static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)};
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("CBS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<unsigned>(v);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) return {};
  if (steps == 1) return {lo};
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return grid;
}

std::string sweep_rows_csv(const SweepConfig& cfg, const std::vector<ErrorCurvePoint>& points) {
  std::string out;
  char buf[512];
  const auto kind = to_string(cfg.schedule.kind);
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.9g,%llu,%llu,%.9g,%.9g,%.9g,%.9g,%.*s,%llu,%llu,%llu\n",
                  p.mu, static_cast<unsigned long long>(p.trials),
                  static_cast<unsigned long long>(p.failures), p.p_hat, p.ci_low, p.ci_high,
                  p.p_exact, static_cast<int>(kind.size()), kind.data(),
                  static_cast<unsigned long long>(cfg.schedule.n),
                  static_cast<unsigned long long>(cfg.schedule.budget),
                  static_cast<unsigned long long>(cfg.master_seed));
    out += buf;
  }
  return out;
}

}  // namespace cbs
