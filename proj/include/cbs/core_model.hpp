// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace cbs {

bool is_power_of_two(std::uint64_t v) noexcept;

/// Exact base-2 logarithm of a power of two. Throws ArgumentError otherwise.
unsigned exact_log2(std::uint64_t v);

/// Number of CBS steps for a dyadic dimension n >= 2.
unsigned step_count(std::uint64_t n);

/// One-sparse signal: x is zero everywhere except x[spike_index] = mu.
/// The vector itself is never stored.
struct ProblemInstance {
  std::uint64_t n = 2;
  std::uint64_t spike_index = 0;
  double mu = 0.0;

  /// Throws ArgumentError unless n is a power of two >= 2, spike_index < n and mu >= 0.
  void validate() const;
};

/// Half-open index range [start, start + length) with power-of-two length
/// and start aligned to a multiple of length.
struct DyadicInterval {
  std::uint64_t start = 0;
  std::uint64_t length = 1;

  bool contains(std::uint64_t i) const noexcept { return i >= start && i - start < length; }
  DyadicInterval left() const noexcept { return {start, length / 2}; }
  DyadicInterval right() const noexcept { return {start + length / 2, length / 2}; }
  bool is_valid_in(std::uint64_t n) const noexcept;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Seeded source of i.i.d. N(0,1) samples. A zero source yields exact zeros and
/// is used for noiseless runs. Both kinds count the draws they hand out.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed);

  static NoiseSource zero();

  double next();

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return draws_; }
  bool is_zero() const noexcept { return zero_; }

 private:
  NoiseSource() = default;

  std::uint64_t seed_ = 0;
  std::uint64_t draws_ = 0;
  bool zero_ = true;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Magnitude 2^{-(s0-s+1)/2} of the non-zero entries of the step-s sensing vector.
double sensing_weight(unsigned s, unsigned s0);

/// Sum of m_s noisy measurements of the step-s Haar sensing vector supported on
/// `interval` (the current support). The left half carries the positive weight.
double measure_step(const ProblemInstance& inst, const DyadicInterval& interval, unsigned s,
                    std::uint64_t m_s, NoiseSource& noise);

}  // namespace cbs
