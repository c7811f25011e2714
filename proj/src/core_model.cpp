// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbs/core_model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "cbs/error.hpp"

namespace cbs {

bool is_power_of_two(std::uint64_t v) noexcept { return std::has_single_bit(v); }

unsigned exact_log2(std::uint64_t v) {
  if (!is_power_of_two(v)) {
    throw ArgumentError("value " + std::to_string(v) + " is not a power of two");
  }
  return static_cast<unsigned>(std::countr_zero(v));
}

unsigned step_count(std::uint64_t n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw ArgumentError("n must be a power of two >= 2, got " + std::to_string(n));
  }
  return exact_log2(n);
}

void ProblemInstance::validate() const {
  step_count(n);
  if (spike_index >= n) {
    throw ArgumentError("spike index " + std::to_string(spike_index) + " outside [0, " +
                        std::to_string(n) + ")");
  }
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw ArgumentError("mu must be a finite nonnegative number");
  }
}

bool DyadicInterval::is_valid_in(std::uint64_t n) const noexcept {
  return length > 0 && is_power_of_two(length) && start % length == 0 && start <= n &&
         length <= n - start;
}

NoiseSource::NoiseSource(std::uint64_t seed) : seed_(seed), zero_(false), engine_(seed) {}

NoiseSource NoiseSource::zero() { return NoiseSource(); }

double NoiseSource::next() {
  ++draws_;
  if (zero_) {
    return 0.0;
  }
  return normal_(engine_);
}

double sensing_weight(unsigned s, unsigned s0) {
  if (s < 1 || s > s0) {
    throw ArgumentError("step " + std::to_string(s) + " outside [1, " + std::to_string(s0) + "]");
  }
  // 2^{-(s0-s+1)/2}, split so odd exponents stay exact up to the final sqrt.
  const int e = -static_cast<int>(s0 - s + 1);
  return std::sqrt(std::ldexp(1.0, e));
}

double measure_step(const ProblemInstance& inst, const DyadicInterval& interval, unsigned s,
                    std::uint64_t m_s, NoiseSource& noise) {
  if (m_s < 1) {
    throw ArgumentError("measurement count must be at least 1");
  }
  const unsigned s0 = step_count(inst.n);
  const double w = sensing_weight(s, s0);
  if (!interval.is_valid_in(inst.n) || interval.length != (inst.n >> (s - 1))) {
    throw ArgumentError("interval is not a step-" + std::to_string(s) + " dyadic support");
  }

  double signal = 0.0;
  if (interval.contains(inst.spike_index)) {
    signal = interval.left().contains(inst.spike_index) ? inst.mu * w : -inst.mu * w;
  }

  double total = 0.0;
  for (std::uint64_t i = 0; i < m_s; ++i) {
    total += signal + noise.next();
  }
  return total;
}

}  // namespace cbs
