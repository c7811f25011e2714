// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cbs/allocation.hpp"
#include "cbs/core_model.hpp"

namespace cbs {

struct StepRecord {
  unsigned s = 0;
  DyadicInterval interval;  // support J_0 at the start of step s
  double statistic = 0.0;   // T_s, sum of the step's measurements
  bool chose_left = false;
  bool spike_still_inside = false;  // after the decision
};

struct RunTrace {
  ProblemInstance instance;
  Schedule schedule;
  std::vector<StepRecord> steps;
  std::uint64_t estimated_index = 0;
  bool success = false;
  std::uint64_t draws = 0;
};

/// Runs s0 rounds of split / sense / sum / halve. Ties (T_s == 0) go right.
/// Throws ArgumentError if the schedule does not fit inst.n.
RunTrace run_cbs(const ProblemInstance& inst, const Schedule& sched, NoiseSource& noise);

/// run_cbs with every noise sample replaced by zero; requires mu > 0.
RunTrace run_cbs_noiseless(const ProblemInstance& inst, const Schedule& sched);

/// Located index only, without building a trace. Same decisions as run_cbs.
std::uint64_t locate(const ProblemInstance& inst, const Schedule& sched, NoiseSource& noise);

std::string trace_to_json(const RunTrace& trace, int indent = 2);

}  // namespace cbs
