// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbs/allocation.hpp"

#include <numeric>
#include <sstream>

#include "json.hpp"

#include "cbs/core_model.hpp"
#include "cbs/error.hpp"

namespace cbs {

std::string_view to_string(ScheduleKind kind) noexcept {
  switch (kind) {
    case ScheduleKind::Original: return "original";
    case ScheduleKind::Modified: return "modified";
    case ScheduleKind::Custom: return "custom";
  }
  return "unknown";
}

std::string_view to_string(Violation v) noexcept {
  switch (v) {
    case Violation::WrongLength: return "wrong-length";
    case Violation::ZeroCount: return "zero-count";
    case Violation::BudgetExceeded: return "budget-exceeded";
    case Violation::BadDimension: return "bad-dimension";
  }
  return "unknown";
}

std::uint64_t Schedule::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

unsigned checked_steps(std::uint64_t n, std::uint64_t m) {
  const unsigned s0 = step_count(n);
  if (m < s0) {
    throw InfeasibleBudgetError("budget m=" + std::to_string(m) + " is below the " +
                                std::to_string(s0) + " steps required for n=" +
                                std::to_string(n));
  }
  return s0;
}

}  // namespace

// Both formulas are evaluated in integers: floor(a / 2^k) == a >> k for a >= 0.
// (m - s0) * s stays far below 2^64 for any budget that fits in memory.

Schedule original_schedule(std::uint64_t n, std::uint64_t m) {
  const unsigned s0 = checked_steps(n, m);
  Schedule out{{}, m, n, ScheduleKind::Original};
  out.counts.reserve(s0);
  const std::uint64_t spare = m - s0;
  for (unsigned s = 1; s <= s0; ++s) {
    out.counts.push_back((s < 64 ? spare >> s : 0) + 1);
  }
  return out;
}

Schedule modified_schedule(std::uint64_t n, std::uint64_t m) {
  const unsigned s0 = checked_steps(n, m);
  Schedule out{{}, m, n, ScheduleKind::Modified};
  out.counts.reserve(s0);
  const std::uint64_t spare = m - s0;
  for (unsigned s = 1; s <= s0; ++s) {
    out.counts.push_back((s + 1 < 64 ? (spare * s) >> (s + 1) : 0) + 1);
  }
  return out;
}

Schedule make_schedule(ScheduleKind kind, std::uint64_t n, std::uint64_t m) {
  switch (kind) {
    case ScheduleKind::Original: return original_schedule(n, m);
    case ScheduleKind::Modified: return modified_schedule(n, m);
    case ScheduleKind::Custom: break;
  }
  throw ArgumentError("custom schedules need explicit counts");
}

Schedule custom_schedule(std::uint64_t n, std::uint64_t m, std::vector<std::uint64_t> counts) {
  return Schedule{std::move(counts), m, n, ScheduleKind::Custom};
}

std::vector<Violation> validate_schedule(const Schedule& sched) {
  std::vector<Violation> out;
  if (sched.n < 2 || !is_power_of_two(sched.n)) {
    out.push_back(Violation::BadDimension);
  } else if (sched.counts.size() != exact_log2(sched.n)) {
    out.push_back(Violation::WrongLength);
  }
  for (auto c : sched.counts) {
    if (c < 1) {
      out.push_back(Violation::ZeroCount);
      break;
    }
  }
  if (sched.total() > sched.budget) {
    out.push_back(Violation::BudgetExceeded);
  }
  return out;
}

void require_valid(const Schedule& sched) {
  const auto violations = validate_schedule(sched);
  if (violations.empty()) {
    return;
  }
  std::string msg = "invalid schedule:";
  for (auto v : violations) {
    msg += ' ';
    msg += to_string(v);
  }
  throw ArgumentError(msg);
}

bool meets_theorem_hypothesis(std::uint64_t n, std::uint64_t m) {
  return m >= 2ull * step_count(n);
}

std::string schedule_to_csv(const Schedule& sched) {
  std::ostringstream os;
  os << "s,m_s\n";
  for (std::size_t i = 0; i < sched.counts.size(); ++i) {
    os << i + 1 << ',' << sched.counts[i] << '\n';
  }
  return os.str();
}

std::string schedule_to_json(const Schedule& sched) {
  return nlohmann::json(sched.counts).dump();
}

std::string schedule_to_text(const Schedule& sched) {
  std::ostringstream os;
  os << "schedule " << to_string(sched.kind) << "  n=" << sched.n << "  m=" << sched.budget
     << '\n';
  os << "   s      m_s\n";
  for (std::size_t i = 0; i < sched.counts.size(); ++i) {
    os.width(4);
    os << i + 1;
    os.width(9);
    os << sched.counts[i] << '\n';
  }
  const auto violations = validate_schedule(sched);
  os << "sum " << sched.total() << " of budget " << sched.budget << ": "
     << (violations.empty() ? "ok" : "INVALID");
  for (auto v : violations) {
    os << ' ' << to_string(v);
  }
  os << '\n';
  if (violations.empty() && !meets_theorem_hypothesis(sched.n, sched.budget)) {
    os << "note: m < 2 log2 n, outside the modified-schedule guarantee\n";
  }
  return os.str();
}

}  // namespace cbs
