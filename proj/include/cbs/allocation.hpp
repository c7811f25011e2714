// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cbs {

enum class ScheduleKind { Original, Modified, Custom };

std::string_view to_string(ScheduleKind kind) noexcept;

/// Per-step measurement counts m_1..m_{s0} drawn from a total budget m.
/// counts[0] is step s = 1.
struct Schedule {
  std::vector<std::uint64_t> counts;
  std::uint64_t budget = 0;
  std::uint64_t n = 2;
  ScheduleKind kind = ScheduleKind::Custom;

  std::uint64_t total() const noexcept;
  std::uint64_t count_at(unsigned s) const { return counts.at(s - 1); }
};

enum class Violation { WrongLength, ZeroCount, BudgetExceeded, BadDimension };

std::string_view to_string(Violation v) noexcept;

/// m_s = floor((m - s0) 2^{-s}) + 1. Throws ArgumentError for non-dyadic n and
/// InfeasibleBudgetError when m < s0.
Schedule original_schedule(std::uint64_t n, std::uint64_t m);

/// m_s = floor((m - s0) s 2^{-(s+1)}) + 1, same errors as original_schedule.
Schedule modified_schedule(std::uint64_t n, std::uint64_t m);

Schedule make_schedule(ScheduleKind kind, std::uint64_t n, std::uint64_t m);

/// Wraps user counts without checking them; see validate_schedule.
Schedule custom_schedule(std::uint64_t n, std::uint64_t m, std::vector<std::uint64_t> counts);

/// Empty result means the schedule is usable for dimension sched.n.
std::vector<Violation> validate_schedule(const Schedule& sched);

/// Throws ArgumentError listing every violation.
void require_valid(const Schedule& sched);

/// m >= 2 log2 n, the budget condition under which the modified threshold is guaranteed.
bool meets_theorem_hypothesis(std::uint64_t n, std::uint64_t m);

std::string schedule_to_csv(const Schedule& sched);
std::string schedule_to_json(const Schedule& sched);
std::string schedule_to_text(const Schedule& sched);

}  // namespace cbs
